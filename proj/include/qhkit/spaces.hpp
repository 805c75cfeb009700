#pragma once

// Metric spaces X, proper subdomains G of X, boundary distance, the length
// metric of X and component balls B^G(z, r).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qhkit/curve_complex.hpp"
#include "qhkit/errors.hpp"
#include "qhkit/geometry.hpp"
#include "qhkit/random.hpp"

namespace qhkit {

// ---------------------------------------------------------------------------
// Analytic planar shapes
// ---------------------------------------------------------------------------

struct WholePlane {
    friend bool operator==(const WholePlane&, const WholePlane&) = default;
};

/// {Im z > 0}
struct UpperHalfPlane {
    friend bool operator==(const UpperHalfPlane&, const UpperHalfPlane&) = default;
};

/// The plane minus one point.
struct PuncturedPlane {
    Point2 center{};
    friend bool operator==(const PuncturedPlane&, const PuncturedPlane&) = default;
};

/// Open disk.
struct Disk {
    Point2 center{};
    double radius = 1.0;
    friend bool operator==(const Disk&, const Disk&) = default;
};

/// Open polygon; rings[0] is the outer ring, the others are holes. Even-odd rule.
struct PolygonWithHoles {
    std::vector<std::vector<Point2>> rings;
    friend bool operator==(const PolygonWithHoles&, const PolygonWithHoles&) = default;
};

using PlaneShape = std::variant<WholePlane, UpperHalfPlane, PuncturedPlane, Disk, PolygonWithHoles>;

namespace detail {

inline std::vector<Segment> polygon_edges(const PolygonWithHoles& poly) {
    std::vector<Segment> out;
    for (const auto& ring : poly.rings) {
        for (std::size_t i = 0; i < ring.size(); ++i) out.push_back({ring[i], ring[(i + 1) % ring.size()]});
    }
    return out;
}

inline bool polygon_contains(const PolygonWithHoles& poly, Point2 p) {
    bool inside = false;
    for (const auto& ring : poly.rings) {
        if (point_in_ring(p, ring)) inside = !inside;
    }
    if (!inside) return false;
    for (const auto& e : polygon_edges(poly)) {
        if (point_segment_distance(p, e) == 0.0) return false;
    }
    return true;
}

inline Rect polygon_bounds(const PolygonWithHoles& poly) {
    Rect r{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& ring : poly.rings) {
        for (const auto& v : ring) {
            r.xmin = std::min(r.xmin, v.x);
            r.ymin = std::min(r.ymin, v.y);
            r.xmax = std::max(r.xmax, v.x);
            r.ymax = std::max(r.ymax, v.y);
        }
    }
    return r;
}

inline void validate_polygon(const PolygonWithHoles& poly) {
    if (poly.rings.empty()) throw ConfigurationError("polygon needs an outer ring");
    for (const auto& ring : poly.rings) {
        if (ring.size() < 3) throw ConfigurationError("polygon ring needs at least three vertices");
    }
}

inline bool finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline bool contains_in(const WholePlane&, Point2 p) { return finite(p); }
inline bool contains_in(const UpperHalfPlane&, Point2 p) { return finite(p) && p.y > 0.0; }
inline bool contains_in(const PuncturedPlane& s, Point2 p) { return finite(p) && !(p == s.center); }
inline bool contains_in(const Disk& s, Point2 p) { return dist(p, s.center) < s.radius; }
inline bool contains_in(const PolygonWithHoles& s, Point2 p) { return polygon_contains(s, p); }

inline bool shape_contains(const PlaneShape& shape, Point2 p) {
    return std::visit([&](const auto& s) { return contains_in(s, p); }, shape);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// SpaceModel
// ---------------------------------------------------------------------------

enum class SpaceKind { PlaneAnalytic, CurveComplex };

/// The ambient space X: an analytic planar set or a 1-D curve complex.
/// Immutable after construction.
class SpaceModel {
public:
    static SpaceModel plane(PlaneShape region = WholePlane{}) {
        if (const auto* poly = std::get_if<PolygonWithHoles>(&region)) detail::validate_polygon(*poly);
        if (const auto* disk = std::get_if<Disk>(&region); disk && !(disk->radius > 0.0)) {
            throw ConfigurationError("disk radius must be positive");
        }
        SpaceModel s;
        s.kind_ = SpaceKind::PlaneAnalytic;
        s.plane_ = std::move(region);
        return s;
    }

    static SpaceModel curve_complex(std::vector<Segment> segments) {
        SpaceModel s;
        s.kind_ = SpaceKind::CurveComplex;
        s.complex_ = std::make_shared<const CurveComplex>(std::move(segments));
        return s;
    }

    SpaceKind kind() const { return kind_; }
    bool is_plane() const { return kind_ == SpaceKind::PlaneAnalytic; }
    bool is_whole_plane() const { return is_plane() && std::holds_alternative<WholePlane>(plane_); }
    const PlaneShape& plane_region() const { return plane_; }

    const CurveComplex& complex() const {
        if (!complex_) throw ConfigurationError("space is not a curve complex");
        return *complex_;
    }

    bool contains(Point2 p) const {
        return is_plane() ? detail::shape_contains(plane_, p) : complex_->contains(p);
    }

    void require(Point2 p) const {
        if (!contains(p)) {
            throw MembershipError("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                                  ") is not in the space");
        }
    }

    /// True when the length metric of X coincides with the ambient metric.
    bool length_is_ambient() const {
        return is_plane() && !std::holds_alternative<PolygonWithHoles>(plane_);
    }

    /// Bounded window used when sampling points of X.
    Rect sample_window() const {
        if (!is_plane()) return complex_->bounds();
        return std::visit(
            [](const auto& s) -> Rect {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, UpperHalfPlane>) {
                    return {-4.0, 0.0, 4.0, 4.0};
                } else if constexpr (std::is_same_v<T, PuncturedPlane>) {
                    return {s.center.x - 4.0, s.center.y - 4.0, s.center.x + 4.0, s.center.y + 4.0};
                } else if constexpr (std::is_same_v<T, Disk>) {
                    return {s.center.x - s.radius, s.center.y - s.radius, s.center.x + s.radius,
                            s.center.y + s.radius};
                } else if constexpr (std::is_same_v<T, PolygonWithHoles>) {
                    return detail::polygon_bounds(s);
                } else {
                    return {-4.0, -4.0, 4.0, 4.0};
                }
            },
            plane_);
    }

    friend bool operator==(const SpaceModel& a, const SpaceModel& b) {
        if (a.kind_ != b.kind_) return false;
        if (a.is_plane()) return a.plane_ == b.plane_;
        return a.complex_ == b.complex_ || *a.complex_ == *b.complex_;
    }

private:
    SpaceModel() = default;

    SpaceKind kind_ = SpaceKind::PlaneAnalytic;
    PlaneShape plane_ = WholePlane{};
    std::shared_ptr<const CurveComplex> complex_;
};

/// |x - y| in X (the Euclidean metric of the plane, restricted to X).
inline double ambient_distance(const SpaceModel& s, Point2 x, Point2 y) {
    s.require(x);
    s.require(y);
    return dist(x, y);
}

namespace detail {

inline constexpr std::size_t kMaxLatticeNodes = 4'000'000;

/// Shortest path over a grid discretization of a polygon, endpoints attached exactly.
inline double polygon_length_distance(const PolygonWithHoles& poly, Point2 x, Point2 y, double h) {
    const auto edges = polygon_edges(poly);
    auto visible = [&](Point2 a, Point2 b) {
        const Segment s{a, b};
        for (const auto& e : edges) {
            if (segments_intersect(s, e)) return false;
        }
        return true;
    };
    if (visible(x, y)) return dist(x, y);

    const Rect box = polygon_bounds(poly);
    const auto nx = static_cast<std::size_t>(std::floor(box.width() / h)) + 1;
    const auto ny = static_cast<std::size_t>(std::floor(box.height() / h)) + 1;
    if (nx * ny > kMaxLatticeNodes) throw ConfigurationError("resolution too fine for the polygon");

    std::vector<std::int64_t> id(nx * ny, -1);
    std::vector<Point2> nodes;
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const Point2 p{box.xmin + static_cast<double>(i) * h, box.ymin + static_cast<double>(j) * h};
            if (polygon_contains(poly, p)) {
                id[j * nx + i] = static_cast<std::int64_t>(nodes.size());
                nodes.push_back(p);
            }
        }
    }
    const std::size_t src = nodes.size();
    const std::size_t dst = nodes.size() + 1;
    nodes.push_back(x);
    nodes.push_back(y);
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(nodes.size());
    auto link = [&](std::size_t a, std::size_t b) {
        const double w = dist(nodes[a], nodes[b]);
        adj[a].emplace_back(b, w);
        adj[b].emplace_back(a, w);
    };
    static constexpr int kOffsets[8][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2}, {2, -1}, {1, -2}};
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const auto a = id[j * nx + i];
            if (a < 0) continue;
            for (const auto& o : kOffsets) {
                const auto ii = static_cast<std::int64_t>(i) + o[0];
                const auto jj = static_cast<std::int64_t>(j) + o[1];
                if (ii < 0 || jj < 0 || ii >= static_cast<std::int64_t>(nx) || jj >= static_cast<std::int64_t>(ny)) {
                    continue;
                }
                const auto b = id[static_cast<std::size_t>(jj) * nx + static_cast<std::size_t>(ii)];
                if (b < 0) continue;
                if (visible(nodes[static_cast<std::size_t>(a)], nodes[static_cast<std::size_t>(b)])) {
                    link(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
                }
            }
        }
    }
    const KdTree tree(std::span<const Point2>(nodes.data(), src));
    for (const std::size_t end : {src, dst}) {
        for (auto k : tree.within(nodes[end], 2.3 * h)) {
            if (visible(nodes[end], nodes[k])) link(end, k);
        }
    }

    std::vector<double> d(nodes.size(), std::numeric_limits<double>::infinity());
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d[src] = 0.0;
    pq.emplace(0.0, src);
    while (!pq.empty()) {
        const auto [du, u] = pq.top();
        pq.pop();
        if (du > d[u]) continue;
        if (u == dst) return du;
        for (const auto& [v, w] : adj[u]) {
            if (du + w < d[v]) {
                d[v] = du + w;
                pq.emplace(d[v], v);
            }
        }
    }
    throw ConnectivityError("points are not connected in the polygon discretization at this resolution");
}

}  // namespace detail

/// Length metric d(x, y): the infimum of curve lengths in X.
///
/// Exact for the curve complex and for planar sets whose length metric is
/// Euclidean; polygons go through a grid discretization of spacing `resolution`.
inline double length_distance(const SpaceModel& s, Point2 x, Point2 y, double resolution) {
    if (!(resolution > 0.0)) throw ConfigurationError("resolution must be positive");
    s.require(x);
    s.require(y);
    if (x == y) return 0.0;
    if (!s.is_plane()) return s.complex().length_distance(x, y);
    if (s.length_is_ambient()) return dist(x, y);
    return detail::polygon_length_distance(std::get<PolygonWithHoles>(s.plane_region()), x, y, resolution);
}

struct QuasiconvexityEstimate {
    double c_hat = 1.0;
    Point2 x{};
    Point2 y{};
    std::size_t pairs = 0;
};

inline Point2 sample_in_space(const SpaceModel& s, SeedStream& rng) {
    if (!s.is_plane()) return s.complex().sample(rng);
    const Rect w = s.sample_window();
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const Point2 p = rng.in_rect(w);
        if (s.contains(p)) return p;
    }
    throw ConfigurationError("sampling window does not meet the space");
}

/// Lower bound on the quasiconvexity constant: max d(x,y)/|x-y| over
/// `samples` points drawn from X and paired consecutively.
inline QuasiconvexityEstimate quasiconvexity_estimate(const SpaceModel& s, std::size_t samples, std::uint64_t seed,
                                                      double resolution = 0.0) {
    if (samples < 2) throw ConfigurationError("quasiconvexity estimate needs at least two samples");
    if (resolution <= 0.0) resolution = s.sample_window().diagonal() / 200.0;
    SeedStream rng(seed);
    QuasiconvexityEstimate est;
    for (std::size_t k = 0; k + 1 < samples; k += 2) {
        const Point2 x = sample_in_space(s, rng);
        Point2 y = sample_in_space(s, rng);
        while (dist(x, y) <= kGeomTol) y = sample_in_space(s, rng);
        const double ratio = length_distance(s, x, y, resolution) / dist(x, y);
        ++est.pairs;
        if (est.pairs == 1 || ratio > est.c_hat) {
            est.c_hat = ratio;
            est.x = x;
            est.y = y;
        }
    }
    est.c_hat = std::max(est.c_hat, 1.0);
    return est;
}

// ---------------------------------------------------------------------------
// Boundary pieces
// ---------------------------------------------------------------------------

struct BoundaryPoint {
    Point2 p{};
    friend bool operator==(const BoundaryPoint&, const BoundaryPoint&) = default;
};

/// Infinite line through `origin` with unit `direction`.
struct BoundaryLine {
    Point2 origin{};
    Point2 direction{1.0, 0.0};
    friend bool operator==(const BoundaryLine&, const BoundaryLine&) = default;
};

struct BoundaryCircle {
    Point2 center{};
    double radius = 1.0;
    friend bool operator==(const BoundaryCircle&, const BoundaryCircle&) = default;
};

using BoundaryPiece = std::variant<BoundaryPoint, Segment, BoundaryLine, BoundaryCircle>;

inline double distance_to_piece(const BoundaryPiece& piece, Point2 p) {
    return std::visit(
        [&](const auto& b) -> double {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, BoundaryPoint>) {
                return dist(p, b.p);
            } else if constexpr (std::is_same_v<T, Segment>) {
                return point_segment_distance(p, b);
            } else if constexpr (std::is_same_v<T, BoundaryLine>) {
                return std::abs(cross(b.direction, p - b.origin));
            } else {
                return std::abs(dist(p, b.center) - b.radius);
            }
        },
        piece);
}

inline bool segment_meets_piece(const BoundaryPiece& piece, const Segment& seg) {
    return std::visit(
        [&](const auto& b) -> bool {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, BoundaryPoint>) {
                return point_segment_distance(b.p, seg) <= kGeomTol;
            } else if constexpr (std::is_same_v<T, Segment>) {
                return segments_intersect(seg, b);
            } else if constexpr (std::is_same_v<T, BoundaryLine>) {
                const double sa = cross(b.direction, seg.a - b.origin);
                const double sb = cross(b.direction, seg.b - b.origin);
                return sa * sb <= 0.0;
            } else {
                const double near = point_segment_distance(b.center, seg);
                const double far = std::max(dist(seg.a, b.center), dist(seg.b, b.center));
                return near <= b.radius && b.radius <= far;
            }
        },
        piece);
}

// ---------------------------------------------------------------------------
// Region
// ---------------------------------------------------------------------------

/// Subdomain of a curve complex: X minus closed excluded pieces, with its
/// boundary relative to X given explicitly.
struct ComplexSubset {
    std::vector<Segment> excluded_segments;
    std::vector<Point2> excluded_points;
    std::vector<Point2> boundary;
    friend bool operator==(const ComplexSubset&, const ComplexSubset&) = default;
};

using RegionShape = std::variant<UpperHalfPlane, PuncturedPlane, Disk, PolygonWithHoles, ComplexSubset>;

/// A proper subdomain G of a space X, with membership and boundary set.
/// Planar regions live in X = the whole plane. Immutable after construction.
class Region {
public:
    Region(std::shared_ptr<const SpaceModel> space, RegionShape shape)
        : space_(std::move(space)), shape_(std::move(shape)) {
        if (!space_) throw ConfigurationError("region needs a space");
        const bool complex_shape = std::holds_alternative<ComplexSubset>(shape_);
        if (complex_shape && space_->is_plane()) {
            throw ConfigurationError("complex subsets need a curve-complex space");
        }
        if (!complex_shape && !space_->is_whole_plane()) {
            throw ConfigurationError("planar regions are supported inside the whole plane only");
        }
        build_boundary();
        if (boundary_.empty()) throw ConfigurationError("region boundary is empty");
        if (complex_shape) validate_complex_subset();
    }

    const SpaceModel& space() const { return *space_; }
    const std::shared_ptr<const SpaceModel>& space_ptr() const { return space_; }
    const RegionShape& shape() const { return shape_; }
    const std::vector<BoundaryPiece>& boundary() const { return boundary_; }

    bool contains(Point2 p) const {
        if (const auto* sub = std::get_if<ComplexSubset>(&shape_)) {
            if (!space_->contains(p)) return false;
            for (const auto& s : sub->excluded_segments) {
                if (point_segment_distance(p, s) <= kGeomTol) return false;
            }
            for (const auto& q : sub->excluded_points) {
                if (dist(p, q) <= kGeomTol) return false;
            }
            for (const auto& q : sub->boundary) {
                if (dist(p, q) <= kGeomTol) return false;
            }
            return true;
        }
        return std::visit(
            [&](const auto& s) -> bool {
                if constexpr (std::is_same_v<std::decay_t<decltype(s)>, ComplexSubset>) {
                    return false;
                } else {
                    return detail::contains_in(s, p);
                }
            },
            shape_);
    }

    void require(Point2 p) const {
        if (!contains(p)) {
            throw MembershipError("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                                  ") is not in the region");
        }
    }

    /// Distance to the boundary set, without a membership check.
    double distance_to_boundary(Point2 p) const {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& piece : boundary_) best = std::min(best, distance_to_piece(piece, p));
        return best;
    }

    /// True when the closed segment lies in G.
    bool segment_inside(const Segment& seg) const {
        if (!contains(seg.a) || !contains(seg.b)) return false;
        if (const auto* sub = std::get_if<ComplexSubset>(&shape_)) {
            const auto& cx = space_->complex();
            const auto la = cx.locate_all(seg.a);
            const auto lb = cx.locate_all(seg.b);
            bool same_piece = false;
            for (const auto& u : la) {
                for (const auto& v : lb) same_piece = same_piece || u.segment == v.segment;
            }
            if (!same_piece) return false;
            for (const auto& s : sub->excluded_segments) {
                if (segments_intersect(seg, s)) return false;
            }
            for (const auto& q : sub->excluded_points) {
                if (point_segment_distance(q, seg) <= kGeomTol) return false;
            }
            for (const auto& q : sub->boundary) {
                if (point_segment_distance(q, seg) <= kGeomTol) return false;
            }
            return true;
        }
        for (const auto& piece : boundary_) {
            if (segment_meets_piece(piece, seg)) return false;
        }
        return true;
    }

    bool is_complex() const { return std::holds_alternative<ComplexSubset>(shape_); }

    /// Bounding rectangle for bounded regions.
    std::optional<Rect> bounds() const {
        if (is_complex()) return space_->complex().bounds();
        if (const auto* d = std::get_if<Disk>(&shape_)) {
            return Rect{d->center.x - d->radius, d->center.y - d->radius, d->center.x + d->radius,
                        d->center.y + d->radius};
        }
        if (const auto* poly = std::get_if<PolygonWithHoles>(&shape_)) return detail::polygon_bounds(*poly);
        return std::nullopt;
    }

    /// Window used by samplers when no explicit window is configured.
    Rect sample_window() const {
        if (auto b = bounds()) return *b;
        if (const auto* pp = std::get_if<PuncturedPlane>(&shape_)) {
            return {pp->center.x - 3.0, pp->center.y - 3.0, pp->center.x + 3.0, pp->center.y + 3.0};
        }
        return {-3.0, 0.0, 3.0, 3.0};
    }

    friend bool operator==(const Region& a, const Region& b) {
        return a.shape_ == b.shape_ && *a.space_ == *b.space_;
    }

private:
    void build_boundary() {
        std::visit(
            [&](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, UpperHalfPlane>) {
                    boundary_.emplace_back(BoundaryLine{{0.0, 0.0}, {1.0, 0.0}});
                } else if constexpr (std::is_same_v<T, PuncturedPlane>) {
                    boundary_.emplace_back(BoundaryPoint{s.center});
                } else if constexpr (std::is_same_v<T, Disk>) {
                    if (!(s.radius > 0.0)) throw ConfigurationError("disk radius must be positive");
                    boundary_.emplace_back(BoundaryCircle{s.center, s.radius});
                } else if constexpr (std::is_same_v<T, PolygonWithHoles>) {
                    detail::validate_polygon(s);
                    for (const auto& e : detail::polygon_edges(s)) boundary_.emplace_back(e);
                } else {
                    for (const auto& p : s.boundary) boundary_.emplace_back(BoundaryPoint{p});
                }
            },
            shape_);
    }

    void validate_complex_subset() const {
        const auto& sub = std::get<ComplexSubset>(shape_);
        const auto& cx = space_->complex();
        for (const auto& p : sub.boundary) {
            if (!cx.contains(p)) throw ConfigurationError("boundary point is not on the complex");
        }
        bool nonempty = false;
        for (const auto& piece : cx.pieces()) {
            for (double u : {0.25, 0.5, 0.75}) nonempty = nonempty || contains(piece.at(u * piece.length()));
        }
        if (!nonempty) throw ConfigurationError("complex subset is empty");
    }

    std::shared_ptr<const SpaceModel> space_;
    RegionShape shape_;
    std::vector<BoundaryPiece> boundary_;
};

/// delta_G(x): distance from x to the boundary of G.
inline double boundary_distance(const Region& g, Point2 x) {
    g.require(x);
    return g.distance_to_boundary(x);
}

/// delta'_G(x): boundary distance measured in the length metric of X.
inline double length_boundary_distance(const Region& g, Point2 x) {
    g.require(x);
    if (g.space().length_is_ambient()) return g.distance_to_boundary(x);
    const auto& cx = g.space().complex();
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : std::get<ComplexSubset>(g.shape()).boundary) best = std::min(best, cx.length_distance(x, p));
    return best;
}

/// Rejection sample of a point of G inside `window`.
inline Point2 sample_in_region(const Region& g, SeedStream& rng, const Rect& window) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const Point2 p = g.is_complex() ? g.space().complex().sample(rng) : rng.in_rect(window);
        if (g.contains(p) && window.contains(p)) return p;
    }
    throw ConfigurationError("sampling window does not meet the region");
}

// ---------------------------------------------------------------------------
// Component balls
// ---------------------------------------------------------------------------

namespace detail {

/// Discretization of X near a center point: nodes plus an adjacency list.
struct LocalGraph {
    std::vector<Point2> nodes;
    std::vector<std::vector<std::uint32_t>> adj;
    std::size_t center = 0;
};

/// Lattice z + h(i, j) within distance `reach` of z, 8-neighbour adjacency.
inline LocalGraph plane_lattice(Point2 z, double reach, double h) {
    const auto n = static_cast<std::int64_t>(std::ceil(reach / h));
    const auto side = static_cast<std::size_t>(2 * n + 1);
    if (side * side > kMaxLatticeNodes) throw ConfigurationError("resolution too fine for this radius");
    LocalGraph g;
    std::vector<std::int64_t> id(side * side, -1);
    auto key = [&](std::int64_t i, std::int64_t j) {
        return static_cast<std::size_t>(j + n) * side + static_cast<std::size_t>(i + n);
    };
    for (std::int64_t j = -n; j <= n; ++j) {
        for (std::int64_t i = -n; i <= n; ++i) {
            if (std::hypot(static_cast<double>(i), static_cast<double>(j)) * h > reach) continue;
            if (i == 0 && j == 0) g.center = g.nodes.size();
            id[key(i, j)] = static_cast<std::int64_t>(g.nodes.size());
            g.nodes.push_back({z.x + static_cast<double>(i) * h, z.y + static_cast<double>(j) * h});
        }
    }
    g.adj.resize(g.nodes.size());
    for (std::int64_t j = -n; j <= n; ++j) {
        for (std::int64_t i = -n; i <= n; ++i) {
            const auto a = id[key(i, j)];
            if (a < 0) continue;
            for (std::int64_t dj = -1; dj <= 1; ++dj) {
                for (std::int64_t di = -1; di <= 1; ++di) {
                    if (di == 0 && dj == 0) continue;
                    const auto ii = i + di;
                    const auto jj = j + dj;
                    if (ii < -n || ii > n || jj < -n || jj > n) continue;
                    const auto b = id[key(ii, jj)];
                    if (b >= 0) g.adj[static_cast<std::size_t>(a)].push_back(static_cast<std::uint32_t>(b));
                }
            }
        }
    }
    return g;
}

/// Each piece of the complex cut into equal parts of length <= h, with z inserted.
inline LocalGraph complex_lattice(const CurveComplex& cx, Point2 z, double h) {
    const double total = cx.total_length();
    if (total / h > static_cast<double>(kMaxLatticeNodes)) throw ConfigurationError("resolution too fine");
    LocalGraph g;
    std::vector<std::int64_t> vertex_node(cx.vertices().size(), -1);
    auto vertex = [&](std::size_t v) {
        if (vertex_node[v] < 0) {
            vertex_node[v] = static_cast<std::int64_t>(g.nodes.size());
            g.nodes.push_back(cx.vertices()[v]);
        }
        return static_cast<std::uint32_t>(vertex_node[v]);
    };
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    const auto zloc = cx.locate(z);
    bool center_set = false;
    for (std::size_t k = 0; k < cx.pieces().size(); ++k) {
        const auto& piece = cx.pieces()[k];
        const double len = piece.length();
        const auto parts = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / h - 1e-12)));
        std::vector<double> params;
        for (std::size_t i = 1; i < parts; ++i) params.push_back(len * static_cast<double>(i) / static_cast<double>(parts));
        const bool z_here = zloc && zloc->segment == k;
        if (z_here && zloc->s > kGeomTol && zloc->s < len - kGeomTol) {
            bool dup = false;
            for (double s : params) dup = dup || std::abs(s - zloc->s) <= kGeomTol;
            if (!dup) params.push_back(zloc->s);
            std::sort(params.begin(), params.end());
        }
        std::uint32_t prev = vertex(cx.piece_vertices(k)[0]);
        for (double s : params) {
            const auto id = static_cast<std::uint32_t>(g.nodes.size());
            g.nodes.push_back(piece.at(s));
            edges.emplace_back(prev, id);
            prev = id;
        }
        edges.emplace_back(prev, vertex(cx.piece_vertices(k)[1]));
    }
    g.adj.resize(g.nodes.size());
    for (const auto& [a, b] : edges) {
        g.adj[a].push_back(b);
        g.adj[b].push_back(a);
    }
    for (std::size_t i = 0; i < g.nodes.size() && !center_set; ++i) {
        if (dist(g.nodes[i], z) <= kGeomTol) {
            g.center = i;
            center_set = true;
        }
    }
    if (!center_set) throw MembershipError("center is not on the curve complex");
    return g;
}

inline LocalGraph local_graph(const SpaceModel& s, Point2 z, double r, double h) {
    if (!(h > 0.0)) throw ConfigurationError("resolution must be positive");
    if (s.is_plane()) return plane_lattice(z, r + 2.0 * h, h);
    return complex_lattice(s.complex(), z, h);
}

}  // namespace detail

/// Mesh-resolution picture of B^G(z, r): the component of B(z, r) ∩ G containing z.
struct ComponentBall {
    Point2 center{};
    double radius = 0.0;
    double resolution = 0.0;
    /// Nodes of the component, lexicographically sorted.
    std::vector<Point2> nodes;
    /// Discretization nodes adjacent to the component but not in it, sorted.
    std::vector<Point2> rim;

    bool contains_node(Point2 p) const { return std::binary_search(nodes.begin(), nodes.end(), p, lex_less); }

    /// Smallest distance from the center to a rim node.
    double rim_distance() const {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : rim) best = std::min(best, dist(p, center));
        return best;
    }
};

/// Nodes of the discretization of X lying in the open ball B(z, r).
inline std::vector<Point2> ball_nodes(const SpaceModel& s, Point2 z, double r, double resolution) {
    s.require(z);
    const auto g = detail::local_graph(s, z, r, resolution);
    std::vector<Point2> out;
    for (const auto& p : g.nodes) {
        if (dist(p, z) < r) out.push_back(p);
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

/// Flood fill from z over discretization nodes in B(z, r) ∩ G. Edges are
/// used only when the whole edge lies in G (and, by convexity of the disk,
/// in B(z, r)).
inline ComponentBall component_ball(const Region& g, Point2 z, double r, double resolution) {
    g.require(z);
    if (!(r > 0.0)) throw ConfigurationError("ball radius must be positive");
    const auto lg = detail::local_graph(g.space(), z, r, resolution);
    std::vector<char> candidate(lg.nodes.size(), 0);
    std::size_t others = 0;
    for (std::size_t i = 0; i < lg.nodes.size(); ++i) {
        if (dist(lg.nodes[i], z) < r && g.contains(lg.nodes[i])) {
            candidate[i] = 1;
            if (i != lg.center) ++others;
        }
    }
    if (others == 0) throw ResolutionError("resolution too coarse: no mesh node besides the center lies in the ball");

    std::vector<char> seen(lg.nodes.size(), 0);
    std::deque<std::size_t> queue{lg.center};
    seen[lg.center] = 1;
    while (!queue.empty()) {
        const auto u = queue.front();
        queue.pop_front();
        for (auto v : lg.adj[u]) {
            if (seen[v] || !candidate[v]) continue;
            if (!g.segment_inside({lg.nodes[u], lg.nodes[v]})) continue;
            seen[v] = 1;
            queue.push_back(v);
        }
    }
    ComponentBall ball{z, r, resolution, {}, {}};
    std::vector<char> rim(lg.nodes.size(), 0);
    for (std::size_t u = 0; u < lg.nodes.size(); ++u) {
        if (!seen[u]) continue;
        ball.nodes.push_back(lg.nodes[u]);
        for (auto v : lg.adj[u]) {
            if (!seen[v]) rim[v] = 1;
        }
    }
    for (std::size_t v = 0; v < lg.nodes.size(); ++v) {
        if (rim[v]) ball.rim.push_back(lg.nodes[v]);
    }
    std::sort(ball.nodes.begin(), ball.nodes.end(), lex_less);
    std::sort(ball.rim.begin(), ball.rim.end(), lex_less);
    return ball;
}

// ---------------------------------------------------------------------------
// Built-in spaces and regions
// ---------------------------------------------------------------------------

namespace builtin {

inline std::shared_ptr<const SpaceModel> plane() {
    return std::make_shared<const SpaceModel>(SpaceModel::plane());
}

inline std::shared_ptr<const Region> upper_half_plane() {
    return std::make_shared<const Region>(plane(), UpperHalfPlane{});
}

inline std::shared_ptr<const Region> punctured_plane() {
    return std::make_shared<const Region>(plane(), PuncturedPlane{});
}

inline std::shared_ptr<const Region> unit_disk() {
    return std::make_shared<const Region>(plane(), Disk{{0.0, 0.0}, 1.0});
}

/// Rectangle frame [-2,2]x[0,1]: the union of the two long sides and the two short sides.
inline std::shared_ptr<const SpaceModel> frame_complex() {
    return std::make_shared<const SpaceModel>(SpaceModel::curve_complex({
        {{-2.0, 0.0}, {2.0, 0.0}},
        {{-2.0, 1.0}, {2.0, 1.0}},
        {{-2.0, 0.0}, {-2.0, 1.0}},
        {{2.0, 0.0}, {2.0, 1.0}},
    }));
}

/// The frame minus the closed segment [-1,1]x{1} of its top side.
inline std::shared_ptr<const Region> frame_minus_top_middle(std::shared_ptr<const SpaceModel> frame = frame_complex()) {
    return std::make_shared<const Region>(
        std::move(frame), ComplexSubset{{{{-1.0, 1.0}, {1.0, 1.0}}}, {}, {{-1.0, 1.0}, {1.0, 1.0}}});
}

/// The open bottom side (-2,2)x{0} of the frame.
inline std::shared_ptr<const Region> frame_bottom_side(std::shared_ptr<const SpaceModel> frame = frame_complex()) {
    return std::make_shared<const Region>(std::move(frame),
                                          ComplexSubset{{{{-2.0, 1.0}, {2.0, 1.0}},
                                                         {{-2.0, 0.0}, {-2.0, 1.0}},
                                                         {{2.0, 0.0}, {2.0, 1.0}}},
                                                        {},
                                                        {{-2.0, 0.0}, {2.0, 0.0}}});
}

}  // namespace builtin

}  // namespace qhkit
