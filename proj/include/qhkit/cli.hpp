#pragma once

// Command-line front end. `run` parses argv with CLI11, merges a JSON
// scenario file with flag overrides, dispatches to a subcommand and writes
// the requested CSV / JSON / SVG reports.
//
// Exit codes: 0 all checks pass, 2 some check fails, 1 configuration error.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qhkit/constants.hpp"
#include "qhkit/estimators.hpp"
#include "qhkit/maps.hpp"
#include "qhkit/qhgraph.hpp"
#include "qhkit/report.hpp"
#include "qhkit/repro.hpp"
#include "qhkit/spaces.hpp"

namespace qhkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitViolation = 2;

// ---------------------------------------------------------------------------
// Value parsing
// ---------------------------------------------------------------------------

inline std::vector<double> parse_list(const std::string& s, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ConfigurationError("cannot parse " + what + " from '" + s + "'");
        }
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (used != item.size()) throw ConfigurationError("cannot parse " + what + " from '" + s + "'");
        out.push_back(v);
    }
    if (out.empty()) throw ConfigurationError("empty " + what);
    return out;
}

inline Point2 parse_point(const std::string& s) {
    const auto v = parse_list(s, "point");
    if (v.size() != 2) throw ConfigurationError("a point is written x,y");
    return {v[0], v[1]};
}

inline Rect parse_rect(const std::vector<double>& v) {
    if (v.size() != 4) throw ConfigurationError("a box is written xmin,ymin,xmax,ymax");
    const Rect r{v[0], v[1], v[2], v[3]};
    if (!r.valid()) throw ConfigurationError("box is empty or inverted");
    return r;
}

inline std::uint64_t parse_seed(const std::string& s) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception&) {
        throw ConfigurationError("seed '" + s + "' is not a non-negative integer");
    }
    if (used != s.size() || s.empty() || s[0] == '-') throw ConfigurationError("seed '" + s + "' is not a non-negative integer");
    return v;
}

// ---------------------------------------------------------------------------
// Scenario
// ---------------------------------------------------------------------------

/// Region descriptor: a built-in name, or a disk / polygon with parameters.
struct DomainSpec {
    std::string kind = "halfplane";
    Disk disk{{0.0, 0.0}, 1.0};
    PolygonWithHoles polygon;
};

struct MeshSpec {
    double grading = 0.1;
    std::optional<Rect> bbox;
    std::optional<double> min_delta;
    std::optional<double> max_delta;
};

struct Scenario {
    std::optional<std::uint64_t> seed;
    DomainSpec domain;
    std::string map = "identity";
    std::array<double, 6> coeffs{1.0, 0.0, 0.0, 1.0, 0.0, 0.0};
    std::optional<DomainSpec> image;
    MeshSpec mesh;
    std::optional<MeshSpec> image_mesh;
    SampleSpec sample;
    std::optional<double> bound;
    double ring_alpha = 2.0;
    double ring_beta = 4.0;
    double t0 = 0.5;
    std::string csv, json, svg;
};

namespace detail {

inline void only_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& where) {
    if (!j.is_object()) throw ConfigurationError(where + " must be an object");
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key())) throw ConfigurationError("unknown key '" + it.key() + "' in " + where);
    }
}

inline std::vector<double> reals(const Json& j, const std::string& what) {
    if (!j.is_array()) throw ConfigurationError(what + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw ConfigurationError(what + " must be an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

inline Point2 point_of(const Json& j, const std::string& what) {
    const auto v = reals(j, what);
    if (v.size() != 2) throw ConfigurationError(what + " must be [x, y]");
    return {v[0], v[1]};
}

inline double real_of(const Json& j, const std::string& what) {
    if (!j.is_number()) throw ConfigurationError(what + " must be a number");
    return j.get<double>();
}

inline DomainSpec domain_of(const Json& j) {
    DomainSpec d;
    if (j.is_string()) {
        d.kind = j.get<std::string>();
        return d;
    }
    only_keys(j, {"kind", "center", "radius", "rings"}, "domain");
    if (!j.contains("kind") || !j["kind"].is_string()) throw ConfigurationError("domain needs a kind");
    d.kind = j["kind"].get<std::string>();
    if (j.contains("center")) d.disk.center = point_of(j["center"], "domain.center");
    if (j.contains("radius")) d.disk.radius = real_of(j["radius"], "domain.radius");
    if (j.contains("rings")) {
        if (!j["rings"].is_array()) throw ConfigurationError("domain.rings must be an array");
        for (const auto& ring : j["rings"]) {
            std::vector<Point2> pts;
            if (!ring.is_array()) throw ConfigurationError("domain.rings entries must be arrays of points");
            for (const auto& p : ring) pts.push_back(point_of(p, "domain.rings point"));
            d.polygon.rings.push_back(std::move(pts));
        }
    }
    return d;
}

inline MeshSpec mesh_of(const Json& j, const std::string& where) {
    only_keys(j, {"grading", "bbox", "min_delta", "max_delta"}, where);
    MeshSpec m;
    if (j.contains("grading")) m.grading = real_of(j["grading"], where + ".grading");
    if (j.contains("bbox")) m.bbox = parse_rect(reals(j["bbox"], where + ".bbox"));
    if (j.contains("min_delta")) m.min_delta = real_of(j["min_delta"], where + ".min_delta");
    if (j.contains("max_delta")) m.max_delta = real_of(j["max_delta"], where + ".max_delta");
    return m;
}

}  // namespace detail

/// Reads a scenario file. Unknown keys are errors so typos do not pass silently.
inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigurationError("cannot open scenario file '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigurationError("scenario file '" + path + "': " + e.what());
    }
    detail::only_keys(j, {"seed", "domain", "map", "mesh", "image_mesh", "sample", "bound", "ring", "relative", "output"},
                      "scenario");
    Scenario s;
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw ConfigurationError("seed must be a non-negative integer");
        s.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("domain")) s.domain = detail::domain_of(j["domain"]);
    if (j.contains("map")) {
        const auto& m = j["map"];
        if (m.is_string()) {
            s.map = m.get<std::string>();
        } else {
            detail::only_keys(m, {"kind", "coeffs", "image"}, "map");
            if (!m.contains("kind") || !m["kind"].is_string()) throw ConfigurationError("map needs a kind");
            s.map = m["kind"].get<std::string>();
            if (m.contains("coeffs")) {
                const auto c = detail::reals(m["coeffs"], "map.coeffs");
                if (c.size() != 6) throw ConfigurationError("map.coeffs needs six numbers a,b,c,d,e,f");
                std::copy(c.begin(), c.end(), s.coeffs.begin());
            }
            if (m.contains("image")) s.image = detail::domain_of(m["image"]);
        }
    }
    if (j.contains("mesh")) s.mesh = detail::mesh_of(j["mesh"], "mesh");
    if (j.contains("image_mesh")) s.image_mesh = detail::mesh_of(j["image_mesh"], "image_mesh");
    if (j.contains("sample")) {
        const auto& p = j["sample"];
        detail::only_keys(p, {"count", "q", "radii", "window", "min_delta", "max_delta", "witness", "eps", "directions", "bins"},
                          "sample");
        auto& sp = s.sample;
        if (p.contains("count")) sp.count = p["count"].get<std::size_t>();
        if (p.contains("q")) sp.locality_q = detail::real_of(p["q"], "sample.q");
        if (p.contains("radii")) sp.radius_schedule = detail::reals(p["radii"], "sample.radii");
        if (p.contains("window")) sp.window = parse_rect(detail::reals(p["window"], "sample.window"));
        if (p.contains("min_delta")) sp.min_delta = detail::real_of(p["min_delta"], "sample.min_delta");
        if (p.contains("max_delta")) sp.max_delta = detail::real_of(p["max_delta"], "sample.max_delta");
        if (p.contains("witness")) sp.witness_params = detail::reals(p["witness"], "sample.witness");
        if (p.contains("eps")) sp.witness_eps = detail::real_of(p["eps"], "sample.eps");
        if (p.contains("directions")) sp.directions = p["directions"].get<std::size_t>();
        if (p.contains("bins")) sp.bins = p["bins"].get<std::size_t>();
    }
    if (j.contains("bound")) s.bound = detail::real_of(j["bound"], "bound");
    if (j.contains("ring")) {
        detail::only_keys(j["ring"], {"alpha", "beta"}, "ring");
        if (j["ring"].contains("alpha")) s.ring_alpha = detail::real_of(j["ring"]["alpha"], "ring.alpha");
        if (j["ring"].contains("beta")) s.ring_beta = detail::real_of(j["ring"]["beta"], "ring.beta");
    }
    if (j.contains("relative")) {
        detail::only_keys(j["relative"], {"t0"}, "relative");
        if (j["relative"].contains("t0")) s.t0 = detail::real_of(j["relative"]["t0"], "relative.t0");
    }
    if (j.contains("output")) {
        detail::only_keys(j["output"], {"csv", "json", "svg"}, "output");
        const auto& o = j["output"];
        if (o.contains("csv")) s.csv = o["csv"].get<std::string>();
        if (o.contains("json")) s.json = o["json"].get<std::string>();
        if (o.contains("svg")) s.svg = o["svg"].get<std::string>();
    }
    return s;
}

inline std::shared_ptr<const Region> make_region(const DomainSpec& d) {
    if (d.kind == "halfplane") return builtin::upper_half_plane();
    if (d.kind == "punctured") return builtin::punctured_plane();
    if (d.kind == "disk") return std::make_shared<const Region>(builtin::plane(), d.disk);
    if (d.kind == "polygon") return std::make_shared<const Region>(builtin::plane(), d.polygon);
    if (d.kind == "frame-omega") return builtin::frame_minus_top_middle();
    if (d.kind == "frame-d") return builtin::frame_bottom_side();
    throw ConfigurationError("unknown domain '" + d.kind +
                             "' (halfplane, punctured, disk, polygon, frame-omega, frame-d)");
}

inline MapSpec make_map(const Scenario& s) {
    if (s.map == "inversion") return MapSpec::inversion();
    if (s.map == "shear") return MapSpec::half_plane_shear();
    const auto src = make_region(s.domain);
    if (s.map == "identity") return MapSpec::identity(src);
    if (s.map == "affine") return MapSpec::affine(s.coeffs, src, s.image ? make_region(*s.image) : src);
    throw ConfigurationError("unknown map '" + s.map + "' (identity, affine, inversion, shear)");
}

/// Mesh clip from the scenario; unbounded regions without a box get one
/// around `focus` inflated by half its size on every side.
inline MeshClip make_clip(const MeshSpec& m, const Region& g, const std::optional<Rect>& focus) {
    MeshClip clip;
    clip.bbox = m.bbox;
    if (!clip.bbox && !g.bounds() && focus) {
        const double w = focus->width() / 2.0, h = focus->height() / 2.0;
        clip.bbox = Rect{focus->xmin - w, focus->ymin - h, focus->xmax + w, focus->ymax + h};
    }
    if (m.min_delta) clip.min_delta = *m.min_delta;
    if (m.max_delta) clip.max_delta = *m.max_delta;
    return clip;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

inline RunReport cmd_qh(const Scenario& s, Point2 from, Point2 to, bool length_mode, std::optional<double> tol) {
    const auto g = make_region(s.domain);
    g->require(from);
    g->require(to);
    const double dx = g->distance_to_boundary(from), dy = g->distance_to_boundary(to);
    MeshSpec m = s.mesh;
    if (!m.min_delta && !g->is_complex()) m.min_delta = 0.5 * std::min(dx, dy);
    std::optional<Rect> focus;
    if (!m.bbox) {
        const double reach = std::max({dist(from, to), dx, dy});
        Rect r{std::min(from.x, to.x) - reach, std::min(from.y, to.y) - reach, std::max(from.x, to.x) + reach,
               std::max(from.y, to.y) + reach};
        focus = r;
    }
    const auto mesh = build_mesh(g, m.grading, make_clip(m, *g, focus), length_mode ? MetricMode::Length : MetricMode::Ambient);
    const auto path = length_mode ? qh_length_distance(*mesh, from, to) : qh_distance(*mesh, from, to);

    RunReport rep;
    rep.command = "qh";
    rep.line("domain", s.domain.kind);
    rep.line("metric", length_mode ? "length" : "ambient");
    rep.line("grading", fmt_real(m.grading));
    rep.line("nodes", std::to_string(mesh->node_count()));
    rep.line("k", fmt_real(path.distance));
    rep.line("path points", std::to_string(path.points.size()));
    std::optional<AnalyticDomain> analytic;
    if (s.domain.kind == "halfplane") analytic = AnalyticDomain::HalfPlane;
    if (s.domain.kind == "punctured") analytic = AnalyticDomain::PuncturedPlane;
    double oracle = std::numeric_limits<double>::quiet_NaN();
    if (analytic) {
        oracle = qh_distance_exact(*analytic, from, to);
        const double rel = oracle > 0.0 ? std::abs(path.distance - oracle) / oracle : std::abs(path.distance);
        rep.line("oracle", fmt_real(oracle));
        rep.line("relative error", fmt_real(rel, 6));
        if (tol) rep.check("relative error <= " + fmt_real(*tol), rel <= *tol, fmt_real(rel, 6));
        rep.data["oracle"] = json_real(oracle);
        rep.data["relative_error"] = json_real(rel);
    } else if (tol) {
        throw ConfigurationError("--tol needs a domain with a closed-form metric (halfplane, punctured)");
    }
    CsvRow row{0, from, to, path.distance, oracle};
    if (tol && analytic) {
        row.bound_lo = oracle * (1.0 - *tol);
        row.bound_hi = oracle * (1.0 + *tol);
        row.pass = rep.all_pass();
    }
    rep.rows.push_back(row);
    rep.data["k"] = json_real(path.distance);
    rep.data["nodes"] = mesh->node_count();
    Json pts = Json::array();
    for (const auto& p : path.points) pts.push_back(json_point(p));
    rep.data["path"] = pts;
    for (const auto& p : path.points) rep.plot.push_back(p);
    return rep;
}

inline RunReport cmd_ball(const Scenario& s, Point2 center, double radius, std::optional<double> resolution) {
    const auto g = make_region(s.domain);
    const double h = resolution ? *resolution : radius / 20.0;
    const auto ball = component_ball(*g, center, radius, h);
    RunReport rep;
    rep.command = "ball";
    rep.line("domain", s.domain.kind);
    rep.line("center", fmt_point(center));
    rep.line("radius", fmt_real(radius));
    rep.line("resolution", fmt_real(h));
    rep.line("nodes", std::to_string(ball.nodes.size()));
    rep.line("rim nodes", std::to_string(ball.rim.size()));
    rep.line("rim distance", fmt_real(ball.rim_distance()));
    rep.line("delta(center)", fmt_real(g->distance_to_boundary(center)));
    std::size_t id = 0;
    Json nodes = Json::array();
    for (const auto& p : ball.nodes) {
        rep.rows.push_back({id++, center, p, dist(center, p), std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::quiet_NaN(), radius, dist(center, p) < radius});
        nodes.push_back(json_point(p));
        rep.plot.push_back(p);
    }
    rep.data = {{"center", json_point(center)}, {"radius", radius}, {"resolution", h}, {"nodes", nodes}};
    return rep;
}

/// A quarter of the smallest boundary distance on a 33x33 grid over the
/// window, and at least 1e-3 of its diagonal.
inline double default_min_delta(const Region& g, const Rect& w) {
    double lo = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 32; ++i) {
        for (int j = 0; j <= 32; ++j) {
            const Point2 p{w.xmin + i / 32.0 * w.width(), w.ymin + j / 32.0 * w.height()};
            if (g.contains(p)) lo = std::min(lo, g.distance_to_boundary(p));
        }
    }
    return std::max(lo / 4.0, 1e-3 * w.diagonal());
}

inline RunReport cmd_check(Property prop, Scenario s) {
    const MapSpec f = make_map(s);
    SampleSpec& spec = s.sample;
    if (prop == Property::Quasiconformal && spec.radius_schedule.empty()) spec.radius_schedule = {0.1, 0.05, 0.01};
    if (spec.witness_params.empty()) {
        if (prop == Property::WeakQS && f.kind() == MapKind::Inversion) spec.witness_params = {2.0, 10.0, 100.0};
        if (prop == Property::LocalWeakQS && f.kind() == MapKind::HalfPlaneShear) spec.witness_params = {1.0, 10.0, 100.0};
    }
    RunReport rep;
    rep.command = std::string("check-") + to_string(prop);
    PropertyReport est;
    std::vector<ScatterPoint> scatter;
    switch (prop) {
        case Property::Quasiconformal: est = estimate_qc(f, spec); break;
        case Property::WeakQS: est = estimate_weak_qs(f, spec); break;
        case Property::LocalWeakQS: est = estimate_local_weak_qs(f, spec); break;
        case Property::Relative: est = estimate_relative(f, spec, s.t0); break;
        case Property::Ring: est = estimate_ring(f, spec, s.ring_alpha, s.ring_beta); break;
        case Property::Semisolid: {
            spec.validate();
            const Rect window = qhkit::detail::sample_window(f, spec);
            MeshSpec ms = s.mesh;
            if (!ms.min_delta) ms.min_delta = spec.min_delta > 0.0 ? spec.min_delta / 4.0 : default_min_delta(f.source(), window);
            const auto mesh_src = build_mesh(f.source_ptr(), ms.grading, make_clip(ms, f.source(), window));
            std::shared_ptr<const QhMesh> mesh_img = mesh_src;
            if (!(f.image() == f.source()) || s.image_mesh) {
                const MeshSpec mi = s.image_mesh ? *s.image_mesh : ms;
                const auto corners = pushforward_points(f, {{window.xmin, window.ymin}, {window.xmax, window.ymax},
                                                            {window.xmin, window.ymax}, {window.xmax, window.ymin}});
                Rect img{corners[0].x, corners[0].y, corners[0].x, corners[0].y};
                for (const auto& c : corners) {
                    img.xmin = std::min(img.xmin, c.x);
                    img.ymin = std::min(img.ymin, c.y);
                    img.xmax = std::max(img.xmax, c.x);
                    img.ymax = std::max(img.ymax, c.y);
                }
                mesh_img = build_mesh(f.image_ptr(), mi.grading, make_clip(mi, f.image(), img));
            }
            scatter = semisolid_scatter(f, *mesh_src, *mesh_img, spec);
            est = semisolid_fit(f, *mesh_src, *mesh_img, spec, scatter);
            break;
        }
    }

    rep.line("property", to_string(prop));
    rep.line("map", est.map_name);
    rep.line("seed", std::to_string(est.seed));
    rep.line("estimate", fmt_real(est.estimate));
    std::string wit;
    for (const auto& p : est.witness.points) wit += (wit.empty() ? "" : " ") + fmt_point(p);
    rep.line("witness", wit.empty() ? "-" : wit);
    rep.line("samples", std::to_string(est.samples_used));
    rep.line("skipped", std::to_string(est.skipped));
    for (const auto& [k, v] : est.scalars) rep.line(k, fmt_real(v));
    for (const auto& row : est.table) {
        rep.line("table", fmt_real(row.key) + " " + fmt_real(row.value) + " " + std::to_string(row.count));
    }
    for (const auto& n : est.notes) rep.line("note", n);

    CsvRow wrow;
    wrow.id = 0;
    if (!est.witness.points.empty()) wrow.x = est.witness.points[0];
    if (est.witness.points.size() > 1) wrow.y = est.witness.points[1];
    wrow.value = est.estimate;
    if (s.bound) {
        wrow.bound_hi = *s.bound;
        wrow.pass = est.estimate <= *s.bound;
        rep.check(std::string(to_string(prop)) + " estimate <= " + fmt_real(*s.bound), wrow.pass,
                  "estimate = " + fmt_real(est.estimate));
    }
    rep.rows.push_back(wrow);
    std::size_t id = 1;
    for (const auto& sp : scatter) {
        rep.rows.push_back({id++, sp.x, sp.y, sp.k_image, sp.k});
        rep.plot.push_back({sp.k, sp.k_image});
    }
    if (scatter.empty()) {
        for (const auto& row : est.table) rep.plot.push_back({row.key, row.value});
        rep.plot_x = "key";
        rep.plot_y = "value";
    } else {
        rep.plot_x = "k(x,y)";
        rep.plot_y = "k(fx,fy)";
    }

    Json j = Json::object();
    j["property"] = to_string(prop);
    j["map"] = est.map_name;
    j["seed"] = est.seed;
    j["estimate"] = json_real(est.estimate);
    Json wp = Json::array();
    for (const auto& p : est.witness.points) wp.push_back(json_point(p));
    j["witness"] = {{"points", wp}, {"ratio", json_real(est.witness.ratio)}};
    j["samples_used"] = est.samples_used;
    j["skipped"] = est.skipped;
    Json sc = Json::object();
    for (const auto& [k, v] : est.scalars) sc[k] = json_real(v);
    j["scalars"] = sc;
    Json tb = Json::array();
    for (const auto& row : est.table) tb.push_back({{"key", json_real(row.key)}, {"value", json_real(row.value)}, {"count", row.count}});
    j["table"] = tb;
    j["notes"] = est.notes;
    if (s.bound) j["bound"] = *s.bound;
    rep.data = j;
    return rep;
}

inline RunReport cmd_constants(double H, double q, double c, double cprime, double K0, double alpha_exp) {
    ChainOptions opt;
    opt.K0 = K0;
    opt.alpha_exp = alpha_exp;
    const auto cs = chain_constants(H, q, c, cprime, opt);
    RunReport rep;
    rep.command = "constants";
    Json j = Json::object();
    for (const auto& [k, v] : cs.fields()) {
        std::string text = fmt_real(v, 12);
        if (v > 0.0 && v < 1.0) {
            const double inv = 1.0 / v;
            if (inv < 1e12 && std::abs(inv - std::round(inv)) <= 1e-9 * inv) text += " (1/" + fmt_real(std::round(inv), 15) + ")";
        }
        rep.line(k, text);
        j[k] = json_real(v);
    }
    if (!cs.lemma41_applies) rep.line("note", "c > c0: k0, thetaM and H_lemma41 are formula values outside their range");
    rep.data = j;
    return rep;
}

// ---------------------------------------------------------------------------
// Driver
// ---------------------------------------------------------------------------

namespace detail {

inline void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigurationError("cannot write '" + path + "'");
    out << body;
}

/// Flag > QH_SEED > scenario.
inline std::optional<std::uint64_t> resolve_seed(const std::string& flag, const std::optional<std::uint64_t>& config) {
    if (!flag.empty()) return parse_seed(flag);
    if (const char* env = std::getenv("QH_SEED"); env && *env) return parse_seed(env);
    return config;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"quasihyperbolic metric toolkit", "qhkit"};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);

    struct Flags {
        std::string config, seed, csv, json, svg;
        std::string domain, map, coeffs, image;
        double grading = 0.0;
        std::string bbox;
        double min_delta = 0.0, max_delta = 0.0;
        std::size_t count = 0;
        double q = 0.0;
        std::string radii, window, witness;
        double s_min_delta = 0.0, s_max_delta = 0.0, eps = 0.0, bound = 0.0;
        std::size_t directions = 0, bins = 0;
        double ring_alpha = 0.0, ring_beta = 0.0, t0 = 0.0;
        std::string from, to, center;
        double radius = 0.0, resolution = 0.0, tol = 0.0;
        bool length = false;
        double H = 1.0, cq = 0.5, c = 1.0, cprime = 1.0, K0 = 1.0, alpha_exp = 1.0;
        std::string suite;
        double n = 0.0, h = 0.0;
    } fl;

    std::map<std::string, CLI::Option*> opts;
    auto output_flags = [&](CLI::App* sub) {
        sub->add_option("--config", fl.config, "scenario file (JSON)");
        sub->add_option("--seed", fl.seed, "seed; overrides QH_SEED and the scenario");
        sub->add_option("--csv", fl.csv, "write the CSV report here");
        sub->add_option("--json", fl.json, "write the JSON report here");
        sub->add_option("--svg", fl.svg, "write an SVG scatter plot here");
    };
    auto mesh_flags = [&](CLI::App* sub) {
        const std::string p = sub->get_name() + ":";
        opts[p + "domain"] = sub->add_option("--domain", fl.domain, "halfplane, punctured, disk, polygon, frame-omega, frame-d");
        opts[p + "grading"] = sub->add_option("--grading", fl.grading, "mesh grading factor in (0, 0.5]");
        opts[p + "bbox"] = sub->add_option("--bbox", fl.bbox, "mesh box xmin,ymin,xmax,ymax");
        opts[p + "min-delta"] = sub->add_option("--min-delta", fl.min_delta, "drop mesh nodes closer to the boundary");
        opts[p + "max-delta"] = sub->add_option("--max-delta", fl.max_delta, "drop mesh nodes farther from the boundary");
    };
    auto sample_flags = [&](CLI::App* sub) {
        const std::string p = sub->get_name() + ":";
        opts[p + "map"] = sub->add_option("--map", fl.map, "identity, affine, inversion, shear");
        opts[p + "coeffs"] = sub->add_option("--coeffs", fl.coeffs, "affine a,b,c,d,e,f for (ax+by+e, cx+dy+f)");
        opts[p + "image"] = sub->add_option("--image", fl.image, "image domain of an affine map");
        opts[p + "count"] = sub->add_option("--count", fl.count, "number of samples");
        opts[p + "q"] = sub->add_option("--q", fl.q, "locality q in (0,1)");
        opts[p + "radii"] = sub->add_option("--radii", fl.radii, "decreasing radius schedule r1,r2,...");
        opts[p + "window"] = sub->add_option("--window", fl.window, "sampling window xmin,ymin,xmax,ymax");
        opts[p + "sample-min-delta"] = sub->add_option("--sample-min-delta", fl.s_min_delta, "lower delta filter for samples");
        opts[p + "sample-max-delta"] = sub->add_option("--sample-max-delta", fl.s_max_delta, "upper delta filter for samples");
        opts[p + "witness"] = sub->add_option("--witness", fl.witness, "witness family parameters t1,t2,...");
        opts[p + "eps"] = sub->add_option("--eps", fl.eps, "shear witness half-width in (0, 1/2)");
        opts[p + "directions"] = sub->add_option("--directions", fl.directions, "directions on each circle");
        opts[p + "bins"] = sub->add_option("--bins", fl.bins, "bins of the relative envelope");
        opts[p + "bound"] = sub->add_option("--bound", fl.bound, "fail (exit 2) when the estimate exceeds this");
    };

    auto* qh = app.add_subcommand("qh", "mesh quasihyperbolic distance between two points");
    output_flags(qh);
    mesh_flags(qh);
    qh->add_option("--from", fl.from, "x,y")->required();
    qh->add_option("--to", fl.to, "x,y")->required();
    qh->add_flag("--length", fl.length, "use delta' of the length metric");
    auto* qh_tol = qh->add_option("--tol", fl.tol, "fail when the relative error against the closed form exceeds this");

    auto* ball = app.add_subcommand("ball", "component ball B^G(z, r) at a lattice resolution");
    output_flags(ball);
    mesh_flags(ball);
    ball->add_option("--center", fl.center, "x,y")->required();
    ball->add_option("--radius", fl.radius, "r > 0")->required();
    auto* ball_res = ball->add_option("--resolution", fl.resolution, "lattice spacing (default r/20)");

    const std::vector<std::pair<std::string, Property>> checks{
        {"check-qc", Property::Quasiconformal}, {"check-wqs", Property::WeakQS},
        {"check-lwqs", Property::LocalWeakQS},  {"check-semisolid", Property::Semisolid},
        {"check-relative", Property::Relative}, {"check-ring", Property::Ring}};
    std::vector<CLI::App*> check_apps;
    for (const auto& [name, prop] : checks) {
        auto* sub = app.add_subcommand(name, std::string("estimate the ") + to_string(prop) + " coefficient of a map");
        output_flags(sub);
        mesh_flags(sub);
        sample_flags(sub);
        if (prop == Property::Ring) {
            opts[name + ":alpha"] = sub->add_option("--alpha", fl.ring_alpha, "ring dilation alpha > 1");
            opts[name + ":beta"] = sub->add_option("--beta", fl.ring_beta, "ring locality beta >= alpha");
        }
        if (prop == Property::Relative) opts[name + ":t0"] = sub->add_option("--t0", fl.t0, "relative threshold t0 in (0,1]");
        check_apps.push_back(sub);
    }

    auto* cons = app.add_subcommand("constants", "closed-form constant chain");
    cons->add_option("--json", fl.json, "write the JSON report here");
    cons->add_option("--H", fl.H, "weak-QS coefficient H >= 1");
    cons->add_option("--q", fl.cq, "locality q in (0,1)");
    cons->add_option("--c", fl.c, "quasiconvexity constant of X");
    cons->add_option("--cprime", fl.cprime, "quasiconvexity constant of Y");
    cons->add_option("--K0", fl.K0, "quasisymmetry constant K0 >= 1");
    cons->add_option("--alpha-exp", fl.alpha_exp, "quasisymmetry exponent in (0,1]");

    auto* repro = app.add_subcommand("repro", "pinned reproduction suites");
    output_flags(repro);
    repro->add_option("suite", fl.suite, "example-1-1, example-1-8, example-3-1, lemma-3-4, lemma-3-6")
        ->required()
        ->check(CLI::IsMember(repro_suites()));
    auto* repro_n = repro->add_option("--n", fl.n, "single witness parameter");
    auto* repro_h = repro->add_option("--h", fl.h, "coefficient the witness ratios must exceed");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        const std::string p = sub->get_name() + ":";
        auto given = [&](const std::string& key) {
            auto it = opts.find(p + key);
            return it != opts.end() && it->second->count() > 0;
        };

        Scenario s;
        if (!fl.config.empty()) s = load_scenario(fl.config);
        if (given("domain")) s.domain.kind = fl.domain;
        if (given("grading")) s.mesh.grading = fl.grading;
        if (given("bbox")) s.mesh.bbox = parse_rect(parse_list(fl.bbox, "bbox"));
        if (given("min-delta")) s.mesh.min_delta = fl.min_delta;
        if (given("max-delta")) s.mesh.max_delta = fl.max_delta;
        if (given("map")) s.map = fl.map;
        if (given("coeffs")) {
            const auto c = parse_list(fl.coeffs, "coefficients");
            if (c.size() != 6) throw ConfigurationError("--coeffs needs six numbers a,b,c,d,e,f");
            std::copy(c.begin(), c.end(), s.coeffs.begin());
        }
        if (given("image")) {
            s.image = DomainSpec{};
            s.image->kind = fl.image;
        }
        if (given("count")) s.sample.count = fl.count;
        if (given("q")) s.sample.locality_q = fl.q;
        if (given("radii")) s.sample.radius_schedule = parse_list(fl.radii, "radii");
        if (given("window")) s.sample.window = parse_rect(parse_list(fl.window, "window"));
        if (given("sample-min-delta")) s.sample.min_delta = fl.s_min_delta;
        if (given("sample-max-delta")) s.sample.max_delta = fl.s_max_delta;
        if (given("witness")) s.sample.witness_params = parse_list(fl.witness, "witness parameters");
        if (given("eps")) s.sample.witness_eps = fl.eps;
        if (given("directions")) s.sample.directions = fl.directions;
        if (given("bins")) s.sample.bins = fl.bins;
        if (given("bound")) s.bound = fl.bound;
        if (given("alpha")) s.ring_alpha = fl.ring_alpha;
        if (given("beta")) s.ring_beta = fl.ring_beta;
        if (given("t0")) s.t0 = fl.t0;
        if (!fl.csv.empty()) s.csv = fl.csv;
        if (!fl.json.empty()) s.json = fl.json;
        if (!fl.svg.empty()) s.svg = fl.svg;

        RunReport rep;
        if (sub == qh) {
            rep = cmd_qh(s, parse_point(fl.from), parse_point(fl.to), fl.length,
                         qh_tol->count() ? std::optional<double>(fl.tol) : std::nullopt);
        } else if (sub == ball) {
            rep = cmd_ball(s, parse_point(fl.center), fl.radius,
                           ball_res->count() ? std::optional<double>(fl.resolution) : std::nullopt);
        } else if (sub == cons) {
            rep = cmd_constants(fl.H, fl.cq, fl.c, fl.cprime, fl.K0, fl.alpha_exp);
        } else if (sub == repro) {
            ReproOptions ro;
            if (const auto seed = detail::resolve_seed(fl.seed, s.seed)) ro.seed = *seed;
            if (repro_n->count()) ro.witness = {fl.n};
            if (repro_h->count()) ro.h = fl.h;
            rep = run_repro(fl.suite, ro);
        } else {
            const auto seed = detail::resolve_seed(fl.seed, s.seed);
            if (!seed) throw ConfigurationError("a seed is required: pass --seed, set QH_SEED or put seed in the scenario");
            s.sample.seed = *seed;
            for (std::size_t i = 0; i < checks.size(); ++i) {
                if (sub == check_apps[i]) rep = cmd_check(checks[i].second, s);
            }
        }

        out << rep.text();
        if (!s.csv.empty()) detail::write_file(s.csv, rep.csv());
        if (!s.json.empty()) detail::write_file(s.json, rep.json());
        if (!s.svg.empty()) detail::write_file(s.svg, rep.svg());
        return rep.all_pass() ? kExitOk : kExitViolation;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

inline int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(std::move(args), std::cout, std::cerr);
}

}  // namespace qhkit::cli
