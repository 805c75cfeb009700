#pragma once

// Boundary-graded graphs approximating the quasihyperbolic metric
//   k_G(x, y) = inf over curves of  integral |dz| / delta_G(z).
// Planar regions get a quadtree whose cells shrink with the boundary
// distance; curve complexes get a graded subdivision of their pieces.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "qhkit/errors.hpp"
#include "qhkit/geometry.hpp"
#include "qhkit/spaces.hpp"

namespace qhkit {

/// Which boundary distance drives the weights: delta_G (ambient metric)
/// or delta'_G (length metric of X).
enum class MetricMode { Ambient, Length };

/// Clipping of the discretized part of G.
struct MeshClip {
    /// Required for unbounded regions.
    std::optional<Rect> bbox;
    /// Nodes closer than this to the boundary are dropped.
    double min_delta = 0.0;
    /// Nodes farther than this from the boundary are dropped.
    double max_delta = std::numeric_limits<double>::infinity();
};

struct PathResult {
    double distance = 0.0;
    /// Points along the path, starting at x and ending at y.
    std::vector<Point2> points;
    double euclidean_length = 0.0;
};

class QhMesh {
public:
    /// Stencil radius in local cell sizes. Wider stencils give more edge
    /// directions and a smaller bias against off-lattice geodesics.
    static constexpr double kStencil = 3.2;

    QhMesh(std::shared_ptr<const Region> region, double grading, MeshClip clip, MetricMode mode)
        : region_(std::move(region)), grading_(grading), clip_(clip), mode_(mode) {
        if (!region_) throw ConfigurationError("mesh needs a region");
        if (!(grading_ > 0.0) || grading_ > 0.5) throw ConfigurationError("grading factor must lie in (0, 0.5]");
        if (clip_.min_delta < 0.0 || !(clip_.max_delta > clip_.min_delta)) {
            throw ConfigurationError("mesh clip needs 0 <= min_delta < max_delta");
        }
        if (region_->is_complex()) {
            build_complex();
        } else {
            build_plane();
        }
        if (nodes_.empty()) throw ConfigurationError("mesh has no nodes: the clip window does not meet the region");
        label_components();
    }

    const Region& region() const { return *region_; }
    const std::shared_ptr<const Region>& region_ptr() const { return region_; }
    double grading() const { return grading_; }
    const MeshClip& clip() const { return clip_; }
    MetricMode mode() const { return mode_; }

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return targets_.size() / 2; }
    const std::vector<Point2>& nodes() const { return nodes_; }
    /// Boundary distance (per mode) at each node.
    const std::vector<double>& node_delta() const { return delta_; }
    /// Local cell size at each node.
    const std::vector<double>& node_cell() const { return cell_; }
    std::size_t component_count() const { return components_; }
    std::uint32_t component_of(std::size_t node) const { return component_[node]; }

    /// Neighbours and weights of a node.
    std::span<const std::uint32_t> neighbors(std::size_t node) const {
        return {targets_.data() + offsets_[node], offsets_[node + 1] - offsets_[node]};
    }
    std::span<const double> weights(std::size_t node) const {
        return {weights_.data() + offsets_[node], offsets_[node + 1] - offsets_[node]};
    }

    /// Boundary distance used for weights (delta_G or delta'_G).
    double delta(Point2 p) const {
        if (mode_ == MetricMode::Length) return length_boundary_distance(*region_, p);
        return region_->distance_to_boundary(p);
    }

    /// Trapezoid quadrature of |dz| / delta along the straight edge p-q.
    static double edge_weight(Point2 p, double dp, Point2 q, double dq) {
        return dist(p, q) * (1.0 / dp + 1.0 / dq) / 2.0;
    }

    double edge_weight(Point2 p, Point2 q) const { return edge_weight(p, delta(p), q, delta(q)); }

    /// Local node spacing near p, used as the snapping error budget.
    double snap_error(Point2 p) const { return std::max(grading_ * delta(p), min_cell_); }

    /// Sum of edge weights along a point path. Accumulated from the
    /// lexicographically smaller end, so a path and its reverse agree bitwise.
    double path_weight(const std::vector<Point2>& pts) const {
        double total = 0.0;
        const std::size_t n = pts.size();
        if (n < 2) return total;
        if (lex_less(pts.back(), pts.front())) {
            for (std::size_t i = n - 1; i > 0; --i) total += edge_weight(pts[i], pts[i - 1]);
        } else {
            for (std::size_t i = 0; i + 1 < n; ++i) total += edge_weight(pts[i], pts[i + 1]);
        }
        return total;
    }

    /// Shortest weighted path from x to y. Endpoints are inserted as
    /// temporary nodes joined to the mesh nodes of their stencil.
    PathResult shortest_path(Point2 x, Point2 y) const {
        region_->require(x);
        region_->require(y);
        if (x == y) return {0.0, {x}, 0.0};
        if (lex_less(y, x)) {
            // Solve in a canonical direction so that swapping endpoints gives bit-identical distances.
            PathResult r = shortest_path(y, x);
            std::reverse(r.points.begin(), r.points.end());
            return r;
        }
        const auto ax = attach(x);
        const auto ay = attach(y);
        if (ax.empty() || ay.empty()) {
            throw ConnectivityError("query point lies outside the meshed part of the region");
        }
        const double dx = delta(x);
        const double dy = delta(y);

        const std::size_t n = nodes_.size();
        const std::size_t target = n;
        std::vector<double> best(n + 1, std::numeric_limits<double>::infinity());
        std::vector<std::int64_t> parent(n + 1, -2);
        std::vector<double> to_target(n, -1.0);
        for (const auto& [k, w] : ay) to_target[k] = w;

        using Item = std::pair<double, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        for (const auto& [k, w] : ax) {
            if (w < best[k]) {
                best[k] = w;
                parent[k] = -1;
                pq.emplace(w, k);
            }
        }
        if (direct_ok(x, y)) {
            best[target] = edge_weight(x, dx, y, dy);
            parent[target] = -1;
            pq.emplace(best[target], target);
        }
        while (!pq.empty()) {
            const auto [du, u] = pq.top();
            pq.pop();
            if (du > best[u]) continue;
            if (u == target) break;
            const auto nb = neighbors(u);
            const auto wt = weights(u);
            for (std::size_t i = 0; i < nb.size(); ++i) {
                const std::size_t v = nb[i];
                const double dv = du + wt[i];
                if (dv < best[v]) {
                    best[v] = dv;
                    parent[v] = static_cast<std::int64_t>(u);
                    pq.emplace(dv, v);
                }
            }
            if (to_target[u] >= 0.0) {
                const double dt = du + to_target[u];
                if (dt < best[target]) {
                    best[target] = dt;
                    parent[target] = static_cast<std::int64_t>(u);
                    pq.emplace(dt, target);
                }
            }
        }
        if (!std::isfinite(best[target])) throw ConnectivityError("endpoints lie in different mesh components");

        PathResult res;
        std::vector<Point2> rev{y};
        for (std::int64_t v = parent[target]; v >= 0; v = parent[static_cast<std::size_t>(v)]) {
            rev.push_back(nodes_[static_cast<std::size_t>(v)]);
        }
        rev.push_back(x);
        res.points.assign(rev.rbegin(), rev.rend());
        for (std::size_t i = 0; i + 1 < res.points.size(); ++i) {
            res.euclidean_length += dist(res.points[i], res.points[i + 1]);
        }
        res.distance = path_weight(res.points);
        return res;
    }

private:
    using Attachment = std::vector<std::pair<std::uint32_t, double>>;

    bool direct_ok(Point2 x, Point2 y) const {
        if (region_->is_complex()) {
            return region_->segment_inside({x, y}) && dist(x, y) <= kStencil * snap_error(x);
        }
        return dist(x, y) <= kStencil * std::max(snap_error(x), snap_error(y)) && region_->segment_inside({x, y});
    }

    Attachment attach(Point2 p) const {
        Attachment out;
        const double dp = delta(p);
        if (region_->is_complex()) {
            for (const auto& loc : region_->space().complex().locate_all(p)) {
                const auto& chain = chains_[loc.segment];
                auto it = std::lower_bound(chain.begin(), chain.end(), loc.s,
                                           [](const auto& e, double s) { return e.first < s; });
                for (auto jt : {it, it == chain.begin() ? chain.end() : std::prev(it)}) {
                    if (jt == chain.end()) continue;
                    const auto k = jt->second;
                    if (nodes_[k] == p || region_->segment_inside({p, nodes_[k]})) {
                        out.emplace_back(k, edge_weight(p, dp, nodes_[k], delta_[k]));
                    }
                }
            }
            return out;
        }
        double radius = kStencil * snap_error(p);
        for (int grow = 0; grow < 6 && out.empty(); ++grow, radius *= 2.0) {
            for (auto k : tree_.within(p, radius)) {
                if (!region_->segment_inside({p, nodes_[k]})) continue;
                out.emplace_back(k, edge_weight(p, dp, nodes_[k], delta_[k]));
            }
        }
        return out;
    }

    bool keep(Point2 p, double d) const {
        return region_->contains(p) && d > 0.0 && d >= clip_.min_delta && d <= clip_.max_delta &&
               (!clip_.bbox || clip_.bbox->contains(p));
    }

    void build_plane() {
        std::optional<Rect> box = clip_.bbox;
        if (!box) box = region_->bounds();
        if (!box) throw ConfigurationError("unbounded region needs a bounding box");
        if (!box->valid()) throw ConfigurationError("bounding box is degenerate");
        if (!clip_.bbox) clip_.bbox = box;
        const double side = std::max(box->width(), box->height());
        const double floor_delta = clip_.min_delta > 0.0 ? clip_.min_delta : side * 1e-4;
        min_cell_ = grading_ * floor_delta / 2.0;

        struct Cell {
            double x0, y0, s;
        };
        std::vector<Cell> stack{{box->xmin, box->ymin, side}};
        std::vector<std::pair<Point2, double>> leaves;
        while (!stack.empty()) {
            const Cell c = stack.back();
            stack.pop_back();
            if (c.x0 > box->xmax || c.y0 > box->ymax) continue;
            const Point2 mid{c.x0 + c.s / 2.0, c.y0 + c.s / 2.0};
            const double half_diag = c.s * std::numbers::sqrt2 / 2.0;
            const bool inside = region_->contains(mid);
            const double d = region_->distance_to_boundary(mid);
            if (!inside && d > half_diag) continue;
            if (inside && d + half_diag < floor_delta) continue;
            if (inside && d - half_diag > clip_.max_delta) continue;
            if (inside && c.s <= grading_ * d) {
                if (keep(mid, d)) leaves.emplace_back(mid, c.s);
                continue;
            }
            if (c.s < min_cell_) continue;
            const double h = c.s / 2.0;
            stack.push_back({c.x0 + h, c.y0 + h, h});
            stack.push_back({c.x0, c.y0 + h, h});
            stack.push_back({c.x0 + h, c.y0, h});
            stack.push_back({c.x0, c.y0, h});
        }
        std::sort(leaves.begin(), leaves.end(), [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
        if (leaves.size() > 20'000'000) throw ConfigurationError("mesh too large");
        for (const auto& [p, s] : leaves) {
            nodes_.push_back(p);
            cell_.push_back(s);
            delta_.push_back(delta(p));
        }
        tree_ = KdTree(nodes_);

        std::vector<std::vector<std::pair<std::uint32_t, double>>> adj(nodes_.size());
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const double ri = kStencil * cell_[i];
            for (auto j : tree_.within(nodes_[i], ri)) {
                if (j == i) continue;
                // An edge is created once, by the endpoint whose stencil reaches the other;
                // when both do, by the lower index.
                const double dij = dist(nodes_[i], nodes_[j]);
                if (j < i && dij <= kStencil * cell_[j]) continue;
                if (!region_->segment_inside({nodes_[i], nodes_[j]})) continue;
                const double w = edge_weight(nodes_[i], delta_[i], nodes_[j], delta_[j]);
                adj[i].emplace_back(j, w);
                adj[j].emplace_back(static_cast<std::uint32_t>(i), w);
            }
        }
        pack(adj);
    }

    void build_complex() {
        const auto& cx = region_->space().complex();
        const double floor_delta = clip_.min_delta > 0.0 ? clip_.min_delta : cx.bounds().diagonal() * 1e-4;
        min_cell_ = grading_ * floor_delta;
        chains_.assign(cx.pieces().size(), {});
        std::vector<std::int64_t> vertex_node(cx.vertices().size(), -1);
        std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;

        auto add_node = [&](Point2 p, double d) {
            nodes_.push_back(p);
            delta_.push_back(d);
            cell_.push_back(std::max(grading_ * d, min_cell_));
            adj.emplace_back();
            return static_cast<std::uint32_t>(nodes_.size() - 1);
        };

        for (std::size_t k = 0; k < cx.pieces().size(); ++k) {
            const auto& piece = cx.pieces()[k];
            const double len = piece.length();
            auto& chain = chains_[k];
            for (std::size_t end = 0; end < 2; ++end) {
                const auto v = cx.piece_vertices(k)[end];
                const Point2 p = cx.vertices()[v];
                const double d = region_->contains(p) ? delta(p) : 0.0;
                if (vertex_node[v] < 0 && keep(p, d)) vertex_node[v] = add_node(p, d);
                if (vertex_node[v] >= 0) chain.emplace_back(end == 0 ? 0.0 : len, static_cast<std::uint32_t>(vertex_node[v]));
            }
            double s = 0.0;
            while (true) {
                const Point2 p = piece.at(s);
                const double step = std::max(grading_ * region_->distance_to_boundary(p), min_cell_);
                s += step;
                if (s >= len - min_cell_ / 2.0) break;
                const Point2 q = piece.at(s);
                const double d = region_->contains(q) ? delta(q) : 0.0;
                if (keep(q, d)) chain.emplace_back(s, add_node(q, d));
            }
            std::sort(chain.begin(), chain.end());
            for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
                const auto a = chain[i].second;
                const auto b = chain[i + 1].second;
                if (!region_->segment_inside({nodes_[a], nodes_[b]})) continue;
                const double w = edge_weight(nodes_[a], delta_[a], nodes_[b], delta_[b]);
                adj[a].emplace_back(b, w);
                adj[b].emplace_back(a, w);
            }
        }
        pack(adj);
    }

    void pack(std::vector<std::vector<std::pair<std::uint32_t, double>>>& adj) {
        offsets_.assign(nodes_.size() + 1, 0);
        for (std::size_t i = 0; i < adj.size(); ++i) {
            std::sort(adj[i].begin(), adj[i].end());
            offsets_[i + 1] = offsets_[i] + adj[i].size();
        }
        targets_.reserve(offsets_.back());
        weights_.reserve(offsets_.back());
        for (auto& row : adj) {
            for (const auto& [j, w] : row) {
                targets_.push_back(j);
                weights_.push_back(w);
            }
            std::vector<std::pair<std::uint32_t, double>>().swap(row);
        }
    }

    void label_components() {
        constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
        component_.assign(nodes_.size(), unset);
        components_ = 0;
        std::vector<std::size_t> stack;
        for (std::size_t s = 0; s < nodes_.size(); ++s) {
            if (component_[s] != unset) continue;
            const auto label = static_cast<std::uint32_t>(components_++);
            component_[s] = label;
            stack.push_back(s);
            while (!stack.empty()) {
                const auto u = stack.back();
                stack.pop_back();
                for (auto v : neighbors(u)) {
                    if (component_[v] == unset) {
                        component_[v] = label;
                        stack.push_back(v);
                    }
                }
            }
        }
    }

    std::shared_ptr<const Region> region_;
    double grading_;
    MeshClip clip_;
    MetricMode mode_;
    double min_cell_ = 0.0;

    std::vector<Point2> nodes_;
    std::vector<double> delta_;
    std::vector<double> cell_;
    std::vector<std::size_t> offsets_;
    std::vector<std::uint32_t> targets_;
    std::vector<double> weights_;
    std::vector<std::uint32_t> component_;
    std::size_t components_ = 0;
    KdTree tree_;
    /// Curve complexes: per piece, (arclength, node) sorted by arclength.
    std::vector<std::vector<std::pair<double, std::uint32_t>>> chains_;
};

inline std::shared_ptr<const QhMesh> build_mesh(std::shared_ptr<const Region> g, double grading_factor, MeshClip clip = {},
                                                MetricMode mode = MetricMode::Ambient) {
    return std::make_shared<const QhMesh>(std::move(g), grading_factor, clip, mode);
}

/// k_G(x, y) over the mesh.
inline PathResult qh_distance(const QhMesh& m, Point2 x, Point2 y) {
    if (m.mode() != MetricMode::Ambient) throw ConfigurationError("qh_distance needs an ambient-metric mesh");
    return m.shortest_path(x, y);
}

/// k'_G(x, y): quasihyperbolic distance with respect to the length metric of X.
inline PathResult qh_length_distance(const QhMesh& m, Point2 x, Point2 y) {
    if (m.mode() != MetricMode::Length) throw ConfigurationError("qh_length_distance needs a length-metric mesh");
    return m.shortest_path(x, y);
}

enum class AnalyticDomain { HalfPlane, PuncturedPlane };

/// Closed-form quasihyperbolic distance in the upper half-plane and in the
/// plane punctured at the origin.
inline double qh_distance_exact(AnalyticDomain domain, Point2 x, Point2 y) {
    if (domain == AnalyticDomain::HalfPlane) {
        if (!(x.y > 0.0) || !(y.y > 0.0)) throw MembershipError("point is not in the upper half-plane");
        if (x == y) return 0.0;
        const double dx = x.x - y.x;
        const double dy = x.y - y.y;
        return std::acosh(1.0 + (dx * dx + dy * dy) / (2.0 * x.y * y.y));
    }
    if (x == Point2{} || y == Point2{}) throw MembershipError("the origin is not in the punctured plane");
    if (x == y) return 0.0;
    const double lr = std::log(norm(y) / norm(x));
    double dth = std::abs(std::atan2(y.y, y.x) - std::atan2(x.y, x.x));
    if (dth > std::numbers::pi) dth = 2.0 * std::numbers::pi - dth;
    return std::hypot(lr, dth);
}

/// Batch of queries against one mesh. Results keep input order.
inline std::vector<PathResult> qh_distance_batch(const QhMesh& m, const std::vector<std::pair<Point2, Point2>>& pairs) {
    std::vector<PathResult> out;
    out.reserve(pairs.size());
    for (const auto& [x, y] : pairs) out.push_back(m.shortest_path(x, y));
    return out;
}

// ---------------------------------------------------------------------------
// Comparison inequalities between |.| and k_G
// ---------------------------------------------------------------------------

/// One evaluated pair of the comparison suite. Bounds that do not apply
/// to the pair are NaN.
struct Lemma34Row {
    std::size_t id = 0;
    Point2 x{};
    Point2 y{};
    Point2 z{};
    double t = std::numeric_limits<double>::quiet_NaN();
    double k = 0.0;
    double oracle = std::numeric_limits<double>::quiet_NaN();
    double euclid = 0.0;
    double delta_x = 0.0;
    double delta_z = 0.0;
    /// (1): upper bound on |x - y|.
    double bound1 = 0.0;
    /// (2): lower and upper bound on k.
    double bound2_lo = std::numeric_limits<double>::quiet_NaN();
    double bound2_hi = std::numeric_limits<double>::quiet_NaN();
    /// (3): lower and upper bound on k.
    double bound3_lo = std::numeric_limits<double>::quiet_NaN();
    double bound3_hi = std::numeric_limits<double>::quiet_NaN();
    bool pass = true;
};

struct Lemma34Options {
    std::uint64_t seed = 1;
    std::size_t count = 200;
    /// Quasiconvexity constant of X.
    double c = 1.0;
    /// Relative mesh tolerance applied to upper bounds on k.
    double eps = 0.05;
    /// Window for base points; defaults to the region's sample window.
    std::optional<Rect> window;
    /// Optional closed-form k used in place of the mesh value.
    std::function<double(Point2, Point2)> oracle;
};

struct Lemma34Report {
    std::vector<Lemma34Row> rows;
    std::vector<std::size_t> violations;
};

namespace detail {

/// Evaluates the three comparison bounds for one pair.
inline void lemma34_bounds(Lemma34Row& row, double c, double eps) {
    const double k = std::isnan(row.oracle) ? row.k : row.oracle;
    const double rel = row.euclid / row.delta_x;
    row.bound1 = std::expm1(k) * row.delta_x * (1.0 + eps);
    bool ok = row.euclid <= row.bound1 + 1e-12;
    if (!std::isnan(row.t)) {
        const double relz = row.euclid / row.delta_z;
        row.bound2_lo = c / (c + row.t) * relz;
        row.bound2_hi = c / (1.0 - (1.0 + c) / (2.0 * c) * row.t) * relz;
        ok = ok && k >= row.bound2_lo * (1.0 - 1e-12) && k <= row.bound2_hi * (1.0 + eps) + 1e-12;
    }
    if (row.euclid <= row.delta_x / (3.0 * c) || k <= 1.0) {
        row.bound3_lo = 0.5 * rel;
        row.bound3_hi = 3.0 * c * rel;
        const bool lo_ok = row.euclid == 0.0 ? k == 0.0 : k > row.bound3_lo;
        ok = ok && lo_ok && k <= row.bound3_hi * (1.0 + eps) + 1e-12;
    }
    row.pass = ok;
}

}  // namespace detail

/// Runs the comparison suite between |.| and k_G on seeded samples.
///
/// Even-indexed rows pair a base point x with a second point y drawn at a
/// random scale around it; odd-indexed rows draw z, t in (0, 1) and a pair
/// x, y from the mesh-resolution component ball of radius t delta_G(z) / (2c).
inline Lemma34Report lemma34_check(const QhMesh& m, const Lemma34Options& opt) {
    const Region& g = m.region();
    const Rect window = opt.window ? *opt.window : g.sample_window();
    SeedStream rng(opt.seed);
    Lemma34Report rep;
    auto k_of = [&](Point2 a, Point2 b) { return m.shortest_path(a, b).distance; };

    for (std::size_t i = 0; i < opt.count; ++i) {
        Lemma34Row row;
        row.id = i;
        if (i % 2 == 0) {
            row.x = sample_in_region(g, rng, window);
            const double dx = g.distance_to_boundary(row.x);
            for (int attempt = 0;; ++attempt) {
                if (attempt > 1000) throw ConfigurationError("cannot place a partner point inside the window");
                const double scale = dx * std::exp(rng.uniform(std::log(0.02), std::log(1.5)));
                Point2 y;
                if (g.is_complex()) {
                    y = sample_in_region(g, rng, {row.x.x - scale, row.x.y - scale, row.x.x + scale, row.x.y + scale});
                } else {
                    y = rng.in_disk(row.x, scale);
                }
                if (g.contains(y) && window.contains(y) && !(y == row.x)) {
                    row.y = y;
                    break;
                }
            }
            row.z = row.x;
        } else {
            row.z = sample_in_region(g, rng, window);
            row.t = rng.uniform(0.05, 0.95);
            row.delta_z = g.distance_to_boundary(row.z);
            const double radius = row.t / (2.0 * opt.c) * row.delta_z;
            const auto ball = component_ball(g, row.z, radius, radius / 12.0);
            const auto pick = [&] {
                return ball.nodes[std::min(ball.nodes.size() - 1,
                                           static_cast<std::size_t>(rng.uniform() * static_cast<double>(ball.nodes.size())))];
            };
            row.x = pick();
            row.y = pick();
        }
        row.delta_x = g.distance_to_boundary(row.x);
        if (row.delta_z == 0.0) row.delta_z = g.distance_to_boundary(row.z);
        row.euclid = dist(row.x, row.y);
        row.k = k_of(row.x, row.y);
        if (opt.oracle) row.oracle = opt.oracle(row.x, row.y);
        detail::lemma34_bounds(row, opt.c, opt.eps);
        if (!row.pass) rep.violations.push_back(i);
        rep.rows.push_back(row);
    }
    return rep;
}

/// One evaluated pair of the length-metric comparison.
struct Lemma36Row {
    std::size_t id = 0;
    Point2 x{};
    Point2 y{};
    double euclid = 0.0;
    double d = 0.0;
    double k = 0.0;
    double k_length = 0.0;
    bool pass = true;
};

struct Lemma36Report {
    std::vector<Lemma36Row> rows;
    std::vector<std::size_t> violations;
};

/// Checks |x-y| <= d(x,y) <= c|x-y| and k/c <= k' <= c k on seeded pairs.
/// `mesh` uses delta_G and `mesh_length` delta'_G over the same region.
inline Lemma36Report lemma36_check(const QhMesh& mesh, const QhMesh& mesh_length, std::uint64_t seed,
                                   std::size_t count, double c, double eps, std::optional<Rect> window = {}) {
    const Region& g = mesh.region();
    if (!(mesh_length.region() == g)) throw ConfigurationError("meshes must share the region");
    const Rect w = window ? *window : g.sample_window();
    const double resolution = w.diagonal() / 400.0;
    SeedStream rng(seed);
    Lemma36Report rep;
    for (std::size_t i = 0; i < count; ++i) {
        Lemma36Row row;
        row.id = i;
        row.x = sample_in_region(g, rng, w);
        do {
            row.y = sample_in_region(g, rng, w);
        } while (dist(row.x, row.y) <= kGeomTol);
        row.euclid = dist(row.x, row.y);
        row.d = length_distance(g.space(), row.x, row.y, resolution);
        row.k = qh_distance(mesh, row.x, row.y).distance;
        row.k_length = qh_length_distance(mesh_length, row.x, row.y).distance;
        row.pass = row.euclid <= row.d * (1.0 + 1e-12) && row.d <= c * row.euclid * (1.0 + eps) &&
                   row.k_length <= c * row.k * (1.0 + eps) && row.k <= c * row.k_length * (1.0 + eps);
        if (!row.pass) rep.violations.push_back(i);
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace qhkit
