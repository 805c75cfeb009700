#pragma once

// Monte-Carlo envelope estimators for the mapping properties. Every estimate
// is a maximum over evaluated samples and therefore a lower bound for the
// true coefficient; each report carries the extremal sample as a witness.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qhkit/errors.hpp"
#include "qhkit/geometry.hpp"
#include "qhkit/maps.hpp"
#include "qhkit/qhgraph.hpp"
#include "qhkit/random.hpp"
#include "qhkit/spaces.hpp"

namespace qhkit {

enum class Property { Quasiconformal, WeakQS, LocalWeakQS, Semisolid, Relative, Ring };

inline const char* to_string(Property p) {
    switch (p) {
        case Property::Quasiconformal: return "quasiconformal";
        case Property::WeakQS: return "weak-qs";
        case Property::LocalWeakQS: return "local-weak-qs";
        case Property::Semisolid: return "semisolid";
        case Property::Relative: return "relative";
        case Property::Ring: return "ring";
    }
    return "?";
}

struct SampleSpec {
    std::uint64_t seed = 1;
    std::size_t count = 100;
    /// Locality q in (0, 1) for the local estimators.
    double locality_q = 0.5;
    /// Strictly decreasing positive radii (quasiconformality); absolute radii (ring).
    std::vector<double> radius_schedule;
    /// Sampling window; defaults to the source region's window.
    std::optional<Rect> window;
    /// Sampled points must satisfy min_delta <= delta_G <= max_delta.
    double min_delta = 0.0;
    double max_delta = std::numeric_limits<double>::infinity();
    /// Parameters of the deterministic witness families (t for the inversion,
    /// n for the half-plane shear).
    std::vector<double> witness_params;
    /// Half-width parameter of the shear witness family, in (0, 1/2).
    double witness_eps = 0.25;
    /// Number of equispaced directions for L_f / l_f.
    std::size_t directions = 64;
    /// Number of bins for the relative envelope.
    std::size_t bins = 10;

    void validate() const {
        if (count < 1) throw ConfigurationError("sample count must be at least 1");
        if (!(locality_q > 0.0 && locality_q < 1.0)) throw ConfigurationError("locality q must lie in (0, 1)");
        for (std::size_t i = 0; i < radius_schedule.size(); ++i) {
            if (!(radius_schedule[i] > 0.0)) throw ConfigurationError("radius schedule must be positive");
            if (i > 0 && !(radius_schedule[i] < radius_schedule[i - 1])) {
                throw ConfigurationError("radius schedule must be strictly decreasing");
            }
        }
        if (!(max_delta > min_delta) || min_delta < 0.0) throw ConfigurationError("need 0 <= min_delta < max_delta");
        if (directions < 4) throw ConfigurationError("need at least four directions");
        if (bins < 1) throw ConfigurationError("need at least one bin");
        if (!(witness_eps > 0.0 && witness_eps < 0.5)) throw ConfigurationError("witness eps must lie in (0, 1/2)");
    }
};

struct Witness {
    std::vector<Point2> points;
    double ratio = 0.0;
};

/// One row of a tabulated estimate (per radius, per bin, ...).
struct TableRow {
    double key = 0.0;
    double value = 0.0;
    std::size_t count = 0;
};

struct PropertyReport {
    Property property = Property::WeakQS;
    std::string map_name;
    double estimate = 0.0;
    Witness witness;
    std::vector<TableRow> table;
    /// Named scalar outputs (fitted slope, mu, alpha, mesh parameters, ...).
    std::vector<std::pair<std::string, double>> scalars;
    std::size_t samples_used = 0;
    std::size_t skipped = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> notes;

    double scalar(const std::string& key) const {
        for (const auto& [k, v] : scalars) {
            if (k == key) return v;
        }
        throw ConfigurationError("report has no scalar '" + key + "'");
    }
};

namespace detail {

inline Rect sample_window(const MapSpec& f, const SampleSpec& spec) {
    return spec.window ? *spec.window : f.source().sample_window();
}

/// Point of the source region within the window and the delta filter.
inline Point2 draw_point(const Region& g, SeedStream& rng, const Rect& window, const SampleSpec& spec) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const Point2 p = sample_in_region(g, rng, window);
        const double d = g.distance_to_boundary(p);
        if (d >= spec.min_delta && d <= spec.max_delta) return p;
    }
    throw ConfigurationError("sampling window and delta filter leave no admissible points");
}

/// Point near x at a log-uniform scale in [lo, hi] * delta_G(x), inside the filters.
inline Point2 draw_near(const Region& g, SeedStream& rng, Point2 x, double lo, double hi, const Rect& window,
                        const SampleSpec& spec) {
    const double dx = g.distance_to_boundary(x);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const double rho = dx * std::exp(rng.uniform(std::log(lo), std::log(hi)));
        const double th = rng.angle();
        const Point2 y{x.x + rho * std::cos(th), x.y + rho * std::sin(th)};
        if (!g.contains(y) || !window.contains(y) || y == x) continue;
        const double d = g.distance_to_boundary(y);
        if (d >= spec.min_delta && d <= spec.max_delta) return y;
    }
    throw ConfigurationError("cannot place a nearby sample inside the window");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Quasiconformality: L_f(x, r) / l_f(x, r)
// ---------------------------------------------------------------------------

/// Directional stretches of f on the circle of radius r around x. Each
/// displacement is normalized by its realized length, so the identity gives
/// exactly equal stretches.
inline std::vector<std::pair<Point2, double>> circle_stretches(const MapSpec& f, Point2 x, double r, std::size_t directions) {
    const Point2 fx = f.eval(x);
    std::vector<std::pair<Point2, double>> out;
    out.reserve(directions);
    for (std::size_t j = 0; j < directions; ++j) {
        const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(directions);
        const Point2 p{x.x + r * std::cos(th), x.y + r * std::sin(th)};
        out.emplace_back(p, dist(f.eval(p), fx) / dist(p, x));
    }
    return out;
}

/// Ratio of largest to smallest normalized stretch: the witness is {x, p_max, p_min}.
inline double qc_ratio(const MapSpec& f, Point2 x, Point2 p_max, Point2 p_min) {
    const Point2 fx = f.eval(x);
    return (dist(f.eval(p_max), fx) / dist(p_max, x)) / (dist(f.eval(p_min), fx) / dist(p_min, x));
}

/// Table of max_x L_f(x, r) / l_f(x, r) per radius; the estimate is the
/// value at the smallest radius that was evaluated.
inline PropertyReport estimate_qc(const MapSpec& f, const SampleSpec& spec) {
    spec.validate();
    if (spec.radius_schedule.empty()) throw ConfigurationError("quasiconformality needs a radius schedule");
    const Region& g = f.source();
    const Rect window = detail::sample_window(f, spec);
    SeedStream rng(spec.seed);
    PropertyReport rep;
    rep.property = Property::Quasiconformal;
    rep.map_name = f.name();
    rep.seed = spec.seed;
    for (double r : spec.radius_schedule) rep.table.push_back({r, 0.0, 0});
    std::vector<Witness> best(spec.radius_schedule.size());

    for (std::size_t i = 0; i < spec.count; ++i) {
        const Point2 x = detail::draw_point(g, rng, window, spec);
        const double dx = g.distance_to_boundary(x);
        ++rep.samples_used;
        for (std::size_t k = 0; k < spec.radius_schedule.size(); ++k) {
            const double r = spec.radius_schedule[k];
            if (r >= dx) {
                ++rep.skipped;
                continue;
            }
            const auto st = circle_stretches(f, x, r, spec.directions);
            auto [mn, mx] = std::minmax_element(st.begin(), st.end(),
                                                [](const auto& u, const auto& v) { return u.second < v.second; });
            const double h = mx->second / mn->second;
            auto& row = rep.table[k];
            if (row.count == 0 || h > row.value) {
                row.value = h;
                best[k] = {{x, mx->first, mn->first}, h};
            }
            ++row.count;
        }
    }
    for (std::size_t k = rep.table.size(); k-- > 0;) {
        if (rep.table[k].count > 0) {
            rep.estimate = rep.table[k].value;
            rep.witness = best[k];
            break;
        }
    }
    if (rep.skipped > 0) rep.notes.push_back(std::to_string(rep.skipped) + " (point, radius) pairs skipped with r >= delta");
    return rep;
}

// ---------------------------------------------------------------------------
// Weak quasisymmetry
// ---------------------------------------------------------------------------

/// |f(x) - f(a)| / |f(x) - f(b)|.
inline double wqs_ratio(const MapSpec& f, Point2 x, Point2 a, Point2 b) {
    const Point2 fx = f.eval(x);
    return dist(f.eval(a), fx) / dist(f.eval(b), fx);
}

namespace detail {

inline void consider(PropertyReport& rep, std::vector<Point2> pts, double ratio) {
    if (ratio > rep.estimate) {
        rep.estimate = ratio;
        rep.witness = {std::move(pts), ratio};
    }
}

/// Deterministic probe triple at x: a maximizes the stretch on the circle of
/// radius rho, b minimizes it on the circle of radius rho (1 + 1e-9). The
/// tiny radial offset keeps |x - a| <= |x - b| robust to rounding.
inline std::optional<std::array<Point2, 3>> circle_probe(const MapSpec& f, Point2 x, double rho, std::size_t directions) {
    const auto inner = circle_stretches(f, x, rho, directions);
    const auto outer = circle_stretches(f, x, rho * (1.0 + 1e-9), directions);
    const auto cmp = [](const auto& u, const auto& v) { return u.second < v.second; };
    const Point2 a = std::max_element(inner.begin(), inner.end(), cmp)->first;
    const Point2 b = std::min_element(outer.begin(), outer.end(), cmp)->first;
    if (!(dist(x, a) <= dist(x, b)) || !f.source().contains(a) || !f.source().contains(b)) return std::nullopt;
    return std::array<Point2, 3>{x, a, b};
}

}  // namespace detail

/// Triples (x, a, b) with |x - a| <= |x - b|: random triples plus a circle
/// probe of radius delta_G(x) / 2 at each sampled x. The degenerate triple
/// a = b always gives ratio 1, so the estimate starts at 1. When f is the
/// inversion, the triples (1, 1/t, t) for t in witness_params are included.
inline PropertyReport estimate_weak_qs(const MapSpec& f, const SampleSpec& spec) {
    spec.validate();
    const Region& g = f.source();
    const Rect window = detail::sample_window(f, spec);
    SeedStream rng(spec.seed);
    PropertyReport rep;
    rep.property = Property::WeakQS;
    rep.map_name = f.name();
    rep.seed = spec.seed;
    rep.estimate = 1.0;

    if (f.kind() == MapKind::Inversion) {
        for (double t : spec.witness_params) {
            if (!(t > 1.0)) throw ConfigurationError("inversion witness needs t > 1");
            const Point2 x{1.0, 0.0}, a{1.0 / t, 0.0}, b{t, 0.0};
            const double ratio = wqs_ratio(f, x, a, b);
            rep.table.push_back({t, ratio, 1});
            detail::consider(rep, {x, a, b}, ratio);
        }
    }
    for (std::size_t i = 0; i < spec.count; ++i) {
        const Point2 x = detail::draw_point(g, rng, window, spec);
        Point2 a = detail::draw_point(g, rng, window, spec);
        Point2 b = detail::draw_point(g, rng, window, spec);
        while (b == x) b = detail::draw_point(g, rng, window, spec);
        while (a == x) a = detail::draw_point(g, rng, window, spec);
        if (dist(x, a) > dist(x, b)) std::swap(a, b);
        if (rep.witness.points.empty()) rep.witness = {{x, a, a}, 1.0};
        ++rep.samples_used;
        detail::consider(rep, {x, a, b}, wqs_ratio(f, x, a, b));
        if (const auto p = detail::circle_probe(f, x, g.distance_to_boundary(x) / 2.0, spec.directions)) {
            detail::consider(rep, {(*p)[0], (*p)[1], (*p)[2]}, wqs_ratio(f, (*p)[0], (*p)[1], (*p)[2]));
        }
    }
    return rep;
}

/// The half-plane shear witness around O = (n, 1/2): a = O + (0, q eps / 2),
/// b = O - (q eps / 2, 0). Returns {O, a, b}.
inline std::array<Point2, 3> shear_witness(double n, double q, double eps) {
    const Point2 o{n, 0.5};
    return {o, Point2{n, 0.5 + 0.5 * q * eps}, Point2{n - 0.5 * q * eps, 0.5}};
}

/// Triples inside the ball B^G(z, q delta_G(z)) around sampled base points
/// z, plus a circle probe of radius q delta_G(z) / 2 centred at z. For
/// planar regions this ball is the disk B(z, q delta_G(z)). When f is
/// the half-plane shear, the witness family at n in witness_params is included.
inline PropertyReport estimate_local_weak_qs(const MapSpec& f, const SampleSpec& spec) {
    spec.validate();
    const Region& g = f.source();
    if (g.is_complex()) throw ConfigurationError("local estimators need a planar source region");
    const Rect window = detail::sample_window(f, spec);
    const double q = spec.locality_q;
    SeedStream rng(spec.seed);
    PropertyReport rep;
    rep.property = Property::LocalWeakQS;
    rep.map_name = f.name();
    rep.seed = spec.seed;
    rep.estimate = 1.0;
    rep.scalars.emplace_back("q", q);

    if (f.kind() == MapKind::HalfPlaneShear) {
        for (double n : spec.witness_params) {
            if (!(n >= 1.0)) throw ConfigurationError("shear witness needs n >= 1");
            const auto [o, a, b] = shear_witness(n, q, spec.witness_eps);
            const double ratio = wqs_ratio(f, o, a, b);
            rep.table.push_back({n, ratio, 1});
            detail::consider(rep, {o, a, b, o}, ratio);
        }
    }
    for (std::size_t i = 0; i < spec.count; ++i) {
        const Point2 z = detail::draw_point(g, rng, window, spec);
        const double rho = q * g.distance_to_boundary(z);
        Point2 x = rng.in_disk(z, rho);
        Point2 a = rng.in_disk(z, rho);
        Point2 b = rng.in_disk(z, rho);
        while (b == x) b = rng.in_disk(z, rho);
        while (a == x) a = rng.in_disk(z, rho);
        if (dist(x, a) > dist(x, b)) std::swap(a, b);
        if (rep.witness.points.empty()) rep.witness = {{x, a, a, z}, 1.0};
        ++rep.samples_used;
        detail::consider(rep, {x, a, b, z}, wqs_ratio(f, x, a, b));
        if (const auto p = detail::circle_probe(f, z, rho / 2.0, spec.directions)) {
            detail::consider(rep, {(*p)[0], (*p)[1], (*p)[2], z}, wqs_ratio(f, (*p)[0], (*p)[1], (*p)[2]));
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Semisolidity: k_G'(f x, f y) against k_G(x, y)
// ---------------------------------------------------------------------------

struct ScatterPoint {
    Point2 x{};
    Point2 y{};
    double k = 0.0;
    double k_image = 0.0;
};

/// Grid of exponents searched by the (mu, alpha) envelope fit.
inline std::vector<double> semisolid_alpha_grid() {
    std::vector<double> out;
    for (int i = 1; i <= 20; ++i) out.push_back(0.05 * i);
    return out;
}

/// Seeded pairs and their mesh quasihyperbolic distances before and after f.
inline std::vector<ScatterPoint> semisolid_scatter(const MapSpec& f, const QhMesh& mesh_src, const QhMesh& mesh_img,
                                                   const SampleSpec& spec) {
    spec.validate();
    if (!(mesh_src.region() == f.source())) throw ConfigurationError("source mesh does not discretize the source region");
    if (!(mesh_img.region() == f.image())) throw ConfigurationError("image mesh does not discretize the image region");
    const Region& g = f.source();
    const Rect window = detail::sample_window(f, spec);
    SeedStream rng(spec.seed);
    std::vector<ScatterPoint> out;
    for (std::size_t i = 0; i < spec.count; ++i) {
        ScatterPoint s;
        s.x = detail::draw_point(g, rng, window, spec);
        if (i % 2 == 0) {
            do {
                s.y = detail::draw_point(g, rng, window, spec);
            } while (s.y == s.x);
        } else {
            s.y = detail::draw_near(g, rng, s.x, 0.05, 1.0, window, spec);
        }
        s.k = qh_distance(mesh_src, s.x, s.y).distance;
        s.k_image = qh_distance(mesh_img, f.eval(s.x), f.eval(s.y)).distance;
        out.push_back(s);
    }
    return out;
}

/// Envelope fits over the scatter: slope s = max k'/k, and for each alpha on
/// the grid mu(alpha) = max k' / max{k^alpha, k}; (mu, alpha) minimizes mu.
inline PropertyReport semisolid_fit(const MapSpec& f, const QhMesh& mesh_src, const QhMesh& mesh_img,
                                    const SampleSpec& spec, const std::vector<ScatterPoint>& scatter) {
    PropertyReport rep;
    rep.property = Property::Semisolid;
    rep.map_name = f.name();
    rep.seed = spec.seed;
    rep.samples_used = scatter.size();
    double slope = 0.0;
    for (const auto& s : scatter) {
        if (s.k <= 0.0) continue;
        const double ratio = s.k_image / s.k;
        if (ratio > slope) {
            slope = ratio;
            rep.witness = {{s.x, s.y}, ratio};
        }
    }
    double best_mu = std::numeric_limits<double>::infinity();
    double best_alpha = 1.0;
    for (double alpha : semisolid_alpha_grid()) {
        double mu = 0.0;
        for (const auto& s : scatter) {
            if (s.k > 0.0) mu = std::max(mu, s.k_image / std::max(std::pow(s.k, alpha), s.k));
        }
        rep.table.push_back({alpha, mu, scatter.size()});
        if (mu < best_mu) {
            best_mu = mu;
            best_alpha = alpha;
        }
    }
    rep.estimate = slope;
    rep.scalars = {{"slope", slope},
                   {"mu", best_mu},
                   {"alpha", best_alpha},
                   {"grading_src", mesh_src.grading()},
                   {"grading_img", mesh_img.grading()},
                   {"nodes_src", static_cast<double>(mesh_src.node_count())},
                   {"nodes_img", static_cast<double>(mesh_img.node_count())}};
    return rep;
}

inline PropertyReport estimate_semisolid(const MapSpec& f, const QhMesh& mesh_src, const QhMesh& mesh_img,
                                         const SampleSpec& spec) {
    return semisolid_fit(f, mesh_src, mesh_img, spec, semisolid_scatter(f, mesh_src, mesh_img, spec));
}

// ---------------------------------------------------------------------------
// Relativity
// ---------------------------------------------------------------------------

/// |f(x) - f(y)| / delta_G'(f(x)).
inline double relative_ratio(const MapSpec& f, Point2 x, Point2 y) {
    const Point2 fx = f.eval(x);
    return dist(fx, f.eval(y)) / f.image().distance_to_boundary(fx);
}

/// Pairs with |x - y| < t0 delta_G(x), binned by t = |x - y| / delta_G(x)
/// over (0, t0). Table rows hold (bin upper edge, cumulative envelope).
inline PropertyReport estimate_relative(const MapSpec& f, const SampleSpec& spec, double t0) {
    spec.validate();
    if (!(t0 > 0.0 && t0 <= 1.0)) throw ConfigurationError("t0 must lie in (0, 1]");
    const Region& g = f.source();
    if (g.is_complex()) throw ConfigurationError("relative estimator needs a planar source region");
    const Rect window = detail::sample_window(f, spec);
    SeedStream rng(spec.seed);
    PropertyReport rep;
    rep.property = Property::Relative;
    rep.map_name = f.name();
    rep.seed = spec.seed;
    rep.scalars.emplace_back("t0", t0);
    const std::size_t nb = spec.bins;
    for (std::size_t b = 0; b < nb; ++b) rep.table.push_back({t0 * static_cast<double>(b + 1) / static_cast<double>(nb), 0.0, 0});

    for (std::size_t i = 0; i < spec.count; ++i) {
        const Point2 x = detail::draw_point(g, rng, window, spec);
        const double dx = g.distance_to_boundary(x);
        Point2 y = x;
        while (y == x) {
            const double rho = t0 * dx * rng.uniform();
            const double th = rng.angle();
            y = {x.x + rho * std::cos(th), x.y + rho * std::sin(th)};
        }
        const double t = dist(x, y) / dx;
        if (!(t < t0)) {
            ++rep.skipped;
            continue;
        }
        const double ratio = relative_ratio(f, x, y);
        const auto b = std::min(nb - 1, static_cast<std::size_t>(t / t0 * static_cast<double>(nb)));
        auto& row = rep.table[b];
        row.value = std::max(row.value, ratio);
        ++row.count;
        ++rep.samples_used;
        detail::consider(rep, {x, y}, ratio);
    }
    double run = 0.0;
    for (auto& row : rep.table) {
        run = std::max(run, row.value);
        row.value = run;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Ring property
// ---------------------------------------------------------------------------

/// Evaluates diam f(closed B) / dist(f(closed B), f(boundary of alpha B)) for
/// B = B^G(z, r) in a planar region with alpha r < delta_G(z), where the
/// component ball is the disk. Closed B is sampled by its mesh nodes plus
/// `directions` points on its boundary circle; the boundary of f(alpha B)
/// is the image of the circle of radius alpha r, sampled at the same angles.
/// Returns {ratio, witness points {z, p, q, u, w}} with p, q realizing the
/// diameter and u, w the distance.
inline std::pair<double, std::vector<Point2>> ring_ratio(const MapSpec& f, Point2 z, double r, double alpha,
                                                         std::size_t directions, double resolution) {
    const Region& g = f.source();
    const auto ball = component_ball(g, z, r, resolution);
    std::vector<Point2> closed = ball.nodes;
    std::vector<Point2> outer;
    for (std::size_t j = 0; j < directions; ++j) {
        const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(directions);
        const Point2 u{std::cos(th), std::sin(th)};
        closed.push_back(z + r * u);
        outer.push_back(z + (alpha * r) * u);
    }
    const auto img = pushforward_points(f, closed);
    const auto img_outer = pushforward_points(f, outer);
    double diam = 0.0;
    std::size_t pi = 0, qi = 0;
    for (std::size_t i = 0; i < img.size(); ++i) {
        for (std::size_t j = i + 1; j < img.size(); ++j) {
            const double d = dist(img[i], img[j]);
            if (d > diam) {
                diam = d;
                pi = i;
                qi = j;
            }
        }
    }
    double gap = std::numeric_limits<double>::infinity();
    std::size_t ui = 0, wi = 0;
    for (std::size_t i = 0; i < img.size(); ++i) {
        for (std::size_t j = 0; j < img_outer.size(); ++j) {
            const double d = dist(img[i], img_outer[j]);
            if (d < gap) {
                gap = d;
                ui = i;
                wi = j;
            }
        }
    }
    return {diam / gap, {z, closed[pi], closed[qi], closed[ui], outer[wi]}};
}

/// Replays a ring witness {z, p, q, u, w}.
inline double ring_witness_ratio(const MapSpec& f, const std::vector<Point2>& w) {
    return dist(f.eval(w[1]), f.eval(w[2])) / dist(f.eval(w[3]), f.eval(w[4]));
}

/// M-hat over sampled balls B^G(z, r) with beta r < delta_G(z). Radii come
/// from the radius schedule when given, else r = u delta_G(z) / beta with u
/// uniform in [0.2, 0.95]. Balls too small to hold mesh nodes are skipped.
inline PropertyReport estimate_ring(const MapSpec& f, const SampleSpec& spec, double alpha, double beta) {
    spec.validate();
    if (!(alpha > 1.0 && alpha <= beta)) throw ConfigurationError("ring property needs 1 < alpha <= beta");
    const Region& g = f.source();
    if (g.is_complex()) throw ConfigurationError("ring estimator needs a planar source region");
    const Rect window = detail::sample_window(f, spec);
    SeedStream rng(spec.seed);
    PropertyReport rep;
    rep.property = Property::Ring;
    rep.map_name = f.name();
    rep.seed = spec.seed;
    rep.scalars = {{"alpha", alpha}, {"beta", beta}};
    for (std::size_t i = 0; i < spec.count; ++i) {
        const Point2 z = detail::draw_point(g, rng, window, spec);
        const double dz = g.distance_to_boundary(z);
        std::vector<double> radii = spec.radius_schedule;
        if (radii.empty()) radii.push_back(rng.uniform(0.2, 0.95) * dz / beta);
        for (double r : radii) {
            if (!(beta * r < dz) || r < 1e-12 * std::max(1.0, dz)) {
                ++rep.skipped;
                continue;
            }
            try {
                const auto [ratio, pts] = ring_ratio(f, z, r, alpha, spec.directions, r / 8.0);
                ++rep.samples_used;
                detail::consider(rep, pts, ratio);
            } catch (const ResolutionError&) {
                ++rep.skipped;
            }
        }
    }
    if (rep.skipped > 0) rep.notes.push_back(std::to_string(rep.skipped) + " balls skipped");
    return rep;
}

// ---------------------------------------------------------------------------
// Witness replay
// ---------------------------------------------------------------------------

/// Re-evaluates the stored witness of a closed-form report.
inline double replay_witness(const MapSpec& f, const PropertyReport& rep) {
    const auto& w = rep.witness.points;
    switch (rep.property) {
        case Property::Quasiconformal: return qc_ratio(f, w.at(0), w.at(1), w.at(2));
        case Property::WeakQS:
        case Property::LocalWeakQS:
            if (w.at(1) == w.at(2)) return 1.0;
            return wqs_ratio(f, w.at(0), w.at(1), w.at(2));
        case Property::Relative: return relative_ratio(f, w.at(0), w.at(1));
        case Property::Ring: return ring_witness_ratio(f, w);
        case Property::Semisolid: break;
    }
    throw ConfigurationError("semisolid witnesses replay against meshes");
}

/// Re-evaluates a semisolid witness against the meshes it came from.
inline double replay_semisolid(const MapSpec& f, const QhMesh& mesh_src, const QhMesh& mesh_img,
                               const PropertyReport& rep) {
    const auto& w = rep.witness.points;
    return qh_distance(mesh_img, f.eval(w.at(0)), f.eval(w.at(1))).distance / qh_distance(mesh_src, w.at(0), w.at(1)).distance;
}

}  // namespace qhkit
