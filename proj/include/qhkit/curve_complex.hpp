#pragma once

// A connected union of straight segments in the plane, carrying the
// Euclidean metric of the plane restricted to it. Points are located as
// (segment, arclength) pairs so intrinsic distances are exact.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "qhkit/errors.hpp"
#include "qhkit/geometry.hpp"
#include "qhkit/random.hpp"

namespace qhkit {

struct ComplexPoint {
    std::size_t segment = 0;
    double s = 0.0;  // arclength from the segment's first endpoint
};

class CurveComplex {
public:
    CurveComplex() = default;

    /// Builds the complex. Segments are split at mutual intersections so the
    /// incidence graph only meets at shared endpoints.
    explicit CurveComplex(std::vector<Segment> segments) : input_(std::move(segments)) {
        if (input_.empty()) throw ConfigurationError("curve complex needs at least one segment");
        for (const auto& s : input_) {
            if (s.length() <= kGeomTol) throw ConfigurationError("curve complex has a degenerate segment");
        }
        split_at_intersections();
        index_vertices();
        all_pairs();
    }

    const std::vector<Segment>& input_segments() const { return input_; }
    const std::vector<Segment>& pieces() const { return pieces_; }
    const std::vector<Point2>& vertices() const { return vertices_; }
    /// Vertex ids of a piece's two endpoints.
    const std::array<std::size_t, 2>& piece_vertices(std::size_t i) const { return piece_vertices_[i]; }

    double total_length() const {
        double t = 0.0;
        for (const auto& s : pieces_) t += s.length();
        return t;
    }

    Rect bounds() const {
        Rect r{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
               -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
        for (const auto& v : vertices_) {
            r.xmin = std::min(r.xmin, v.x);
            r.ymin = std::min(r.ymin, v.y);
            r.xmax = std::max(r.xmax, v.x);
            r.ymax = std::max(r.ymax, v.y);
        }
        return r;
    }

    double distance_to_complex(Point2 p) const {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& s : pieces_) best = std::min(best, point_segment_distance(p, s));
        return best;
    }

    bool contains(Point2 p) const { return distance_to_complex(p) <= kGeomTol; }

    /// Every (piece, arclength) location of p; a vertex has one per incident piece.
    std::vector<ComplexPoint> locate_all(Point2 p) const {
        std::vector<ComplexPoint> out;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            const auto& s = pieces_[i];
            if (point_segment_distance(p, s) <= kGeomTol) {
                out.push_back({i, closest_param(s, p) * s.length()});
            }
        }
        return out;
    }

    std::optional<ComplexPoint> locate(Point2 p) const {
        auto all = locate_all(p);
        if (all.empty()) return std::nullopt;
        return all.front();
    }

    Point2 coords(ComplexPoint c) const { return pieces_.at(c.segment).at(c.s); }

    /// Exact intrinsic (length-metric) distance between two points of the complex.
    double length_distance(Point2 a, Point2 b) const {
        const auto la = locate_all(a);
        const auto lb = locate_all(b);
        if (la.empty() || lb.empty()) throw MembershipError("point is not on the curve complex");
        double best = std::numeric_limits<double>::infinity();
        for (const auto& pa : la) {
            for (const auto& pb : lb) best = std::min(best, located_distance(pa, pb));
        }
        return best;
    }

    double vertex_distance(std::size_t u, std::size_t v) const { return vdist_[u * vertices_.size() + v]; }

    /// Uniform sample with respect to arclength.
    Point2 sample(SeedStream& rng) const {
        const double total = total_length();
        double t = rng.uniform(0.0, total);
        for (const auto& s : pieces_) {
            const double len = s.length();
            if (t < len) return s.at(t);
            t -= len;
        }
        return pieces_.back().b;
    }

    friend bool operator==(const CurveComplex& a, const CurveComplex& b) { return a.input_ == b.input_; }

private:
    double located_distance(const ComplexPoint& pa, const ComplexPoint& pb) const {
        if (pa.segment == pb.segment) return std::abs(pa.s - pb.s);
        const double la = pieces_[pa.segment].length();
        const double lb = pieces_[pb.segment].length();
        const auto& va = piece_vertices_[pa.segment];
        const auto& vb = piece_vertices_[pb.segment];
        const double da[2] = {pa.s, la - pa.s};
        const double db[2] = {pb.s, lb - pb.s};
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) best = std::min(best, da[i] + vertex_distance(va[i], vb[j]) + db[j]);
        }
        return best;
    }

    void split_at_intersections() {
        std::vector<std::vector<double>> cuts(input_.size());
        for (std::size_t i = 0; i < input_.size(); ++i) {
            for (std::size_t j = 0; j < input_.size(); ++j) {
                if (i == j) continue;
                const Segment& s = input_[i];
                const Segment& t = input_[j];
                const Point2 d1 = s.b - s.a;
                const Point2 d2 = t.b - t.a;
                const double den = cross(d1, d2);
                const double len = s.length();
                if (std::abs(den) <= kGeomTol * len * t.length()) {
                    const bool collinear = std::abs(cross(t.a - s.a, d1)) <= kGeomTol * len &&
                                           std::abs(cross(t.b - s.a, d1)) <= kGeomTol * len;
                    if (!collinear) continue;
                    const double pa = dot(t.a - s.a, d1) / len;
                    const double pb = dot(t.b - s.a, d1) / len;
                    const double overlap = std::min(len, std::max(pa, pb)) - std::max(0.0, std::min(pa, pb));
                    if (overlap > kGeomTol) throw ConfigurationError("curve complex has overlapping segments");
                    for (Point2 e : {t.a, t.b}) {
                        if (point_segment_distance(e, s) <= kGeomTol) cuts[i].push_back(closest_param(s, e) * len);
                    }
                    continue;
                }
                const double u = cross(t.a - s.a, d2) / den;
                const double v = cross(t.a - s.a, d1) / den;
                const double tol = kGeomTol / std::max(len, 1.0);
                if (u > -tol && u < 1.0 + tol && v > -tol && v < 1.0 + tol) {
                    cuts[i].push_back(std::clamp(u, 0.0, 1.0) * len);
                }
            }
        }
        for (std::size_t i = 0; i < input_.size(); ++i) {
            const Segment& s = input_[i];
            auto& c = cuts[i];
            c.push_back(0.0);
            c.push_back(s.length());
            std::sort(c.begin(), c.end());
            std::vector<double> uniq;
            for (double v : c) {
                if (uniq.empty() || v - uniq.back() > kGeomTol) uniq.push_back(v);
            }
            uniq.back() = s.length();
            for (std::size_t k = 0; k + 1 < uniq.size(); ++k) {
                const Point2 a = k == 0 ? s.a : s.at(uniq[k]);
                const Point2 b = k + 2 == uniq.size() ? s.b : s.at(uniq[k + 1]);
                pieces_.push_back({a, b});
            }
        }
    }

    std::size_t vertex_id(Point2 p) {
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (dist(vertices_[i], p) <= kGeomTol) return i;
        }
        vertices_.push_back(p);
        return vertices_.size() - 1;
    }

    void index_vertices() {
        for (const auto& s : pieces_) piece_vertices_.push_back({vertex_id(s.a), vertex_id(s.b)});
    }

    void all_pairs() {
        const std::size_t n = vertices_.size();
        const double inf = std::numeric_limits<double>::infinity();
        vdist_.assign(n * n, inf);
        for (std::size_t i = 0; i < n; ++i) vdist_[i * n + i] = 0.0;
        for (std::size_t k = 0; k < pieces_.size(); ++k) {
            const auto [u, v] = piece_vertices_[k];
            const double w = pieces_[k].length();
            vdist_[u * n + v] = std::min(vdist_[u * n + v], w);
            vdist_[v * n + u] = std::min(vdist_[v * n + u], w);
        }
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    const double via = vdist_[i * n + k] + vdist_[k * n + j];
                    if (via < vdist_[i * n + j]) vdist_[i * n + j] = via;
                }
            }
        }
        for (double d : vdist_) {
            if (d == inf) throw ConfigurationError("curve complex is not connected");
        }
    }

    std::vector<Segment> input_;
    std::vector<Segment> pieces_;
    std::vector<Point2> vertices_;
    std::vector<std::array<std::size_t, 2>> piece_vertices_;
    std::vector<double> vdist_;
};

}  // namespace qhkit
