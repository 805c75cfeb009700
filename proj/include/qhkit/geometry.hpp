#pragma once

// Planar primitives shared by every module: points, rectangles, segments,
// distance helpers and a small static k-d tree for radius queries.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace qhkit {

/// Absolute tolerance for geometric predicates on coordinates.
inline constexpr double kGeomTol = 1e-9;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
    friend constexpr Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Point2, Point2) = default;
};

inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double dist(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }
inline constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }

/// Lexicographic order, used to make node sets canonical.
inline constexpr bool lex_less(Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

struct Rect {
    double xmin = 0.0;
    double ymin = 0.0;
    double xmax = 0.0;
    double ymax = 0.0;

    constexpr bool contains(Point2 p) const {
        return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
    }
    constexpr double width() const { return xmax - xmin; }
    constexpr double height() const { return ymax - ymin; }
    constexpr bool valid() const { return xmax > xmin && ymax > ymin; }
    double diagonal() const { return std::hypot(width(), height()); }
    friend constexpr bool operator==(const Rect&, const Rect&) = default;
};

struct Segment {
    Point2 a;
    Point2 b;

    double length() const { return dist(a, b); }
    Point2 at(double s) const {
        const double len = length();
        const double u = len > 0.0 ? s / len : 0.0;
        return {a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)};
    }
    friend constexpr bool operator==(const Segment&, const Segment&) = default;
};

/// Parameter u in [0,1] of the point of `s` closest to `p`.
inline double closest_param(const Segment& s, Point2 p) {
    const Point2 d = s.b - s.a;
    const double len2 = dot(d, d);
    if (len2 == 0.0) return 0.0;
    return std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
}

inline double point_segment_distance(Point2 p, const Segment& s) {
    const double u = closest_param(s, p);
    return dist(p, Point2{s.a.x + u * (s.b.x - s.a.x), s.a.y + u * (s.b.y - s.a.y)});
}

inline int orientation(Point2 a, Point2 b, Point2 c) {
    const double v = cross(b - a, c - a);
    if (v > 0.0) return 1;
    if (v < 0.0) return -1;
    return 0;
}

/// Closed-segment intersection test (touching counts).
inline bool segments_intersect(const Segment& s, const Segment& t) {
    const int o1 = orientation(s.a, s.b, t.a);
    const int o2 = orientation(s.a, s.b, t.b);
    const int o3 = orientation(t.a, t.b, s.a);
    const int o4 = orientation(t.a, t.b, s.b);
    if (o1 != o2 && o3 != o4) return true;
    auto on_seg = [](const Segment& q, Point2 p) {
        return std::min(q.a.x, q.b.x) <= p.x && p.x <= std::max(q.a.x, q.b.x) &&
               std::min(q.a.y, q.b.y) <= p.y && p.y <= std::max(q.a.y, q.b.y);
    };
    if (o1 == 0 && on_seg(s, t.a)) return true;
    if (o2 == 0 && on_seg(s, t.b)) return true;
    if (o3 == 0 && on_seg(t, s.a)) return true;
    if (o4 == 0 && on_seg(t, s.b)) return true;
    return false;
}

inline double segment_segment_distance(const Segment& s, const Segment& t) {
    if (segments_intersect(s, t)) return 0.0;
    return std::min({point_segment_distance(s.a, t), point_segment_distance(s.b, t),
                     point_segment_distance(t.a, s), point_segment_distance(t.b, s)});
}

/// Even-odd point-in-polygon test for a closed ring (first vertex not repeated).
inline bool point_in_ring(Point2 p, std::span<const Point2> ring) {
    bool inside = false;
    const std::size_t n = ring.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point2 a = ring[i];
        const Point2 b = ring[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double xc = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < xc) inside = !inside;
        }
    }
    return inside;
}

/// Static 2-d tree over a fixed point set; supports radius queries.
class KdTree {
public:
    KdTree() = default;

    explicit KdTree(std::span<const Point2> pts) : pts_(pts.begin(), pts.end()) {
        idx_.resize(pts_.size());
        std::iota(idx_.begin(), idx_.end(), 0U);
        build(0, idx_.size(), 0);
    }

    /// Indices of all points with distance <= radius from q, in ascending index order.
    std::vector<std::uint32_t> within(Point2 q, double radius) const {
        std::vector<std::uint32_t> out;
        if (!idx_.empty()) query(0, idx_.size(), 0, q, radius, out);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::size_t size() const { return pts_.size(); }

private:
    void build(std::size_t lo, std::size_t hi, int depth) {
        if (hi - lo <= 1) return;
        const std::size_t mid = lo + (hi - lo) / 2;
        const bool by_x = depth % 2 == 0;
        std::nth_element(idx_.begin() + static_cast<std::ptrdiff_t>(lo),
                         idx_.begin() + static_cast<std::ptrdiff_t>(mid),
                         idx_.begin() + static_cast<std::ptrdiff_t>(hi),
                         [&](std::uint32_t a, std::uint32_t b) {
                             const double ka = by_x ? pts_[a].x : pts_[a].y;
                             const double kb = by_x ? pts_[b].x : pts_[b].y;
                             return ka < kb || (ka == kb && a < b);
                         });
        build(lo, mid, depth + 1);
        build(mid + 1, hi, depth + 1);
    }

    void query(std::size_t lo, std::size_t hi, int depth, Point2 q, double r,
               std::vector<std::uint32_t>& out) const {
        if (lo >= hi) return;
        const std::size_t mid = lo + (hi - lo) / 2;
        const Point2 p = pts_[idx_[mid]];
        if (dist(p, q) <= r) out.push_back(idx_[mid]);
        const double diff = depth % 2 == 0 ? q.x - p.x : q.y - p.y;
        if (diff <= r) query(lo, mid, depth + 1, q, r, out);
        if (diff >= -r) query(mid + 1, hi, depth + 1, q, r, out);
    }

    std::vector<Point2> pts_;
    std::vector<std::uint32_t> idx_;
};

}  // namespace qhkit
