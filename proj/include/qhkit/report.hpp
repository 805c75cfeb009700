#pragma once

// Report records for the command-line front end: named PASS/FAIL checks,
// fixed-column CSV rows, a JSON record and an optional SVG scatter plot.
// Every rendering is a pure function of the record, so equal runs give
// byte-identical files.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qhkit/geometry.hpp"

namespace qhkit {

using Json = nlohmann::ordered_json;

inline std::string fmt_real(double v, int precision = 10) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

inline std::string fmt_point(Point2 p, int precision = 10) {
    return "(" + fmt_real(p.x, precision) + ", " + fmt_real(p.y, precision) + ")";
}

/// NaN and infinities become null.
inline Json json_real(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

inline Json json_point(Point2 p) { return Json::array({json_real(p.x), json_real(p.y)}); }

/// One CSV line: id, x_re, x_im, y_re, y_im, value, oracle, bound_lo, bound_hi, pass.
/// Unused numeric fields are NaN and render empty.
struct CsvRow {
    std::size_t id = 0;
    Point2 x{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    Point2 y{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    double value = std::numeric_limits<double>::quiet_NaN();
    double oracle = std::numeric_limits<double>::quiet_NaN();
    double bound_lo = std::numeric_limits<double>::quiet_NaN();
    double bound_hi = std::numeric_limits<double>::quiet_NaN();
    bool pass = true;
};

struct Check {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct RunReport {
    std::string command;
    std::vector<std::string> lines;
    std::vector<Check> checks;
    std::vector<CsvRow> rows;
    Json data = Json::object();
    std::vector<Point2> plot;
    std::string plot_x = "x";
    std::string plot_y = "y";

    void line(const std::string& key, const std::string& value) {
        std::string k = key;
        if (k.size() < 16) k.resize(16, ' ');
        lines.push_back(k + " " + value);
    }

    void check(std::string name, bool pass, std::string detail = {}) {
        checks.push_back({std::move(name), pass, std::move(detail)});
    }

    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }

    std::string text() const {
        std::string out;
        for (const auto& l : lines) out += l + "\n";
        for (const auto& c : checks) {
            out += (c.pass ? "PASS " : "FAIL ") + c.name;
            if (!c.detail.empty()) out += ": " + c.detail;
            out += "\n";
        }
        return out;
    }

    std::string csv() const {
        std::string out = "id,x_re,x_im,y_re,y_im,value,oracle,bound_lo,bound_hi,pass\n";
        auto cell = [](double v) { return std::isnan(v) ? std::string() : fmt_real(v, 17); };
        for (const auto& r : rows) {
            out += std::to_string(r.id) + "," + cell(r.x.x) + "," + cell(r.x.y) + "," + cell(r.y.x) + "," + cell(r.y.y) +
                   "," + cell(r.value) + "," + cell(r.oracle) + "," + cell(r.bound_lo) + "," + cell(r.bound_hi) + "," +
                   (r.pass ? "1" : "0") + "\n";
        }
        return out;
    }

    std::string json() const {
        Json j = Json::object();
        j["command"] = command;
        j["data"] = data;
        Json checks_j = Json::array();
        for (const auto& c : checks) checks_j.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        j["checks"] = checks_j;
        j["pass"] = all_pass();
        return j.dump(2) + "\n";
    }

    /// Scatter of `plot` with the diagonal y = x for reference.
    std::string svg() const {
        const double W = 480.0, Hh = 480.0, pad = 48.0;
        double lo_x = 0.0, hi_x = 1.0, lo_y = 0.0, hi_y = 1.0;
        bool first = true;
        for (const auto& p : plot) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
            if (first) {
                lo_x = hi_x = p.x;
                lo_y = hi_y = p.y;
                first = false;
            }
            lo_x = std::min(lo_x, p.x);
            hi_x = std::max(hi_x, p.x);
            lo_y = std::min(lo_y, p.y);
            hi_y = std::max(hi_y, p.y);
        }
        if (hi_x <= lo_x) hi_x = lo_x + 1.0;
        if (hi_y <= lo_y) hi_y = lo_y + 1.0;
        auto sx = [&](double v) { return pad + (v - lo_x) / (hi_x - lo_x) * (W - 2 * pad); };
        auto sy = [&](double v) { return Hh - pad - (v - lo_y) / (hi_y - lo_y) * (Hh - 2 * pad); };
        std::ostringstream s;
        s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << Hh << "\">\n";
        s << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << W - 2 * pad << "\" height=\"" << Hh - 2 * pad
          << "\" fill=\"none\" stroke=\"black\"/>\n";
        const double d0 = std::max(lo_x, lo_y), d1 = std::min(hi_x, hi_y);
        if (d1 > d0) {
            s << "<line x1=\"" << fmt_real(sx(d0), 6) << "\" y1=\"" << fmt_real(sy(d0), 6) << "\" x2=\"" << fmt_real(sx(d1), 6)
              << "\" y2=\"" << fmt_real(sy(d1), 6) << "\" stroke=\"gray\" stroke-dasharray=\"4\"/>\n";
        }
        for (const auto& p : plot) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
            s << "<circle cx=\"" << fmt_real(sx(p.x), 6) << "\" cy=\"" << fmt_real(sy(p.y), 6)
              << "\" r=\"2\" fill=\"steelblue\"/>\n";
        }
        s << "<text x=\"" << W / 2 << "\" y=\"" << Hh - 12 << "\" text-anchor=\"middle\">" << plot_x << " ["
          << fmt_real(lo_x, 4) << ", " << fmt_real(hi_x, 4) << "]</text>\n";
        s << "<text x=\"14\" y=\"" << Hh / 2 << "\" transform=\"rotate(-90 14 " << Hh / 2 << ")\" text-anchor=\"middle\">"
          << plot_y << " [" << fmt_real(lo_y, 4) << ", " << fmt_real(hi_y, 4) << "]</text>\n";
        s << "</svg>\n";
        return s.str();
    }
};

}  // namespace qhkit
