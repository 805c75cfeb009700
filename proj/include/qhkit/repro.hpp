#pragma once

// Pinned reproduction suites for the worked examples and the comparison
// lemmas. Each suite returns a RunReport with one check per assertion.

#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qhkit/estimators.hpp"
#include "qhkit/maps.hpp"
#include "qhkit/qhgraph.hpp"
#include "qhkit/report.hpp"
#include "qhkit/spaces.hpp"

namespace qhkit {

struct ReproOptions {
    std::uint64_t seed = 20240601;
    /// Witness parameters; the suite's defaults when empty.
    std::vector<double> witness;
    /// Optional coefficient that a witness ratio must exceed.
    std::optional<double> h;
};

inline const std::vector<std::string>& repro_suites() {
    static const std::vector<std::string> names{"example-1-1", "example-1-8", "example-3-1", "lemma-3-4", "lemma-3-6"};
    return names;
}

namespace detail {

/// Distance in the punctured plane from log-polar coordinates (log|z|, arg z).
inline double log_polar_distance(double r1, double t1, double r2, double t2) {
    double dth = std::abs(t1 - t2);
    if (dth > std::numbers::pi) dth = 2.0 * std::numbers::pi - dth;
    return std::hypot(r1 - r2, dth);
}

inline Point2 from_log_polar(double r, double t) { return {std::exp(r) * std::cos(t), std::exp(r) * std::sin(t)}; }

inline std::string rel_detail(const std::string& what, double value, double limit) {
    return what + " = " + fmt_real(value, 6) + " (limit " + fmt_real(limit, 6) + ")";
}

struct SuiteDomain {
    std::string name;
    std::shared_ptr<const Region> region;
    std::optional<AnalyticDomain> analytic;
    double c = 1.0;
    double grading = 0.1;
    MeshClip clip;
    std::optional<Rect> window;
};

inline std::vector<SuiteDomain> suite_domains() {
    auto frame = builtin::frame_complex();
    return {
        {"halfplane", builtin::upper_half_plane(), AnalyticDomain::HalfPlane, 1.0, 0.1,
         MeshClip{Rect{-4.0, 0.0, 4.0, 5.0}, 0.05}, Rect{-1.5, 0.25, 1.5, 2.5}},
        {"punctured", builtin::punctured_plane(), AnalyticDomain::PuncturedPlane, 1.0, 0.1,
         MeshClip{Rect{-10.0, -10.0, 10.0, 10.0}, 0.02, 10.0}, Rect{-5.0, -5.0, 5.0, 5.0}},
        {"disk", builtin::unit_disk(), std::nullopt, 1.0, 0.1, MeshClip{std::nullopt, 0.01}, std::nullopt},
        {"frame-omega", builtin::frame_minus_top_middle(frame), std::nullopt, 5.0, 0.1, MeshClip{std::nullopt, 0.01},
         std::nullopt},
        {"frame-d", builtin::frame_bottom_side(frame), std::nullopt, 5.0, 0.1, MeshClip{std::nullopt, 0.01}, std::nullopt},
    };
}

inline double nan_max(double a, double b) { return std::isnan(a) ? b : std::isnan(b) ? a : std::max(a, b); }
inline double nan_min(double a, double b) { return std::isnan(a) ? b : std::isnan(b) ? a : std::min(a, b); }

}  // namespace detail

/// The inversion z / |z|^2 of the punctured plane.
inline RunReport repro_example_1_1(const ReproOptions& opt) {
    RunReport rep;
    rep.command = "repro example-1-1";
    rep.line("seed", std::to_string(opt.seed));
    const auto f = MapSpec::inversion();
    SeedStream rng(opt.seed);

    // Closed form on 100 pairs in 0.2 <= |z| <= 5. In log-polar coordinates
    // the inversion is (r, t) -> (-r, t), so the oracle is evaluated without
    // rounding in the map; the Cartesian path goes through eval_map.
    double max_exact = 0.0, max_cart = 0.0;
    std::size_t id = 0;
    for (int i = 0; i < 100; ++i, ++id) {
        const double r1 = rng.uniform(std::log(0.2), std::log(5.0)), t1 = rng.uniform(-std::numbers::pi, std::numbers::pi);
        const double r2 = rng.uniform(std::log(0.2), std::log(5.0)), t2 = rng.uniform(-std::numbers::pi, std::numbers::pi);
        const double k = detail::log_polar_distance(r1, t1, r2, t2);
        const double k_img = detail::log_polar_distance(-r1, t1, -r2, t2);
        max_exact = std::max(max_exact, std::abs(k_img - k));
        const Point2 x = detail::from_log_polar(r1, t1), y = detail::from_log_polar(r2, t2);
        const double kc = qh_distance_exact(AnalyticDomain::PuncturedPlane, x, y);
        const double kc_img = qh_distance_exact(AnalyticDomain::PuncturedPlane, f.eval(x), f.eval(y));
        max_cart = std::max(max_cart, std::abs(kc_img - kc) / kc);
        rep.rows.push_back({id, x, y, kc_img, kc, std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::quiet_NaN(), std::abs(k_img - k) == 0.0});
    }
    rep.check("isometry residual on 100 closed-form pairs is 0", max_exact == 0.0,
              "max |k(fx,fy) - k(x,y)| = " + fmt_real(max_exact, 6));
    rep.check("Cartesian closed-form residual <= 1e-12", max_cart <= 1e-12,
              "max relative residual = " + fmt_real(max_cart, 6));

    // Mesh distances before and after the map on 100 pairs in 0.5 <= |z| <= 2.
    const auto mesh = build_mesh(f.source_ptr(), 0.1, MeshClip{Rect{-10.0, -10.0, 10.0, 10.0}, 0.1, 10.0});
    double max_mesh = 0.0;
    for (int i = 0; i < 100; ++i, ++id) {
        const Point2 x = detail::from_log_polar(rng.uniform(std::log(0.5), std::log(2.0)), rng.angle());
        Point2 y = x;
        while (dist(x, y) < 1e-6) y = detail::from_log_polar(rng.uniform(std::log(0.5), std::log(2.0)), rng.angle());
        const double k = qh_distance(*mesh, x, y).distance;
        const double k_img = qh_distance(*mesh, f.eval(x), f.eval(y)).distance;
        const double rel = std::abs(k_img - k) / k;
        max_mesh = std::max(max_mesh, rel);
        rep.rows.push_back({id, x, y, k_img, k, k * 0.96, k * 1.04, rel <= 0.04});
    }
    rep.line("mesh nodes", std::to_string(mesh->node_count()));
    rep.check("mesh isometry residual <= 4% on 100 pairs", max_mesh <= 0.04,
              detail::rel_detail("max relative residual", max_mesh, 0.04));

    // Weak-QS witnesses (1, 1/t, t).
    SampleSpec spec;
    spec.seed = opt.seed;
    spec.count = 200;
    spec.window = Rect{-3.0, -3.0, 3.0, 3.0};
    spec.min_delta = 0.2;
    spec.witness_params = opt.witness.empty() ? std::vector<double>{2.0, 10.0, 100.0} : opt.witness;
    const auto wqs = estimate_weak_qs(f, spec);
    for (const auto& row : wqs.table) {
        const double err = std::abs(row.value - row.key) / row.key;
        rep.rows.push_back({id++, {1.0, 0.0}, {row.key, 0.0}, row.value, row.key, std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::quiet_NaN(), err <= 1e-12});
        rep.check("weak-QS witness t = " + fmt_real(row.key) + " gives ratio t", err <= 1e-12,
                  "ratio = " + fmt_real(row.value, 17));
        if (opt.h) {
            rep.check("witness t = " + fmt_real(row.key) + " exceeds H = " + fmt_real(*opt.h), row.value > *opt.h,
                      "ratio = " + fmt_real(row.value));
        }
    }
    rep.line("H-hat (weak QS)", fmt_real(wqs.estimate));

    rep.data = {{"suite", "example-1-1"},
                {"seed", opt.seed},
                {"closed_form_max_residual", json_real(max_exact)},
                {"cartesian_max_relative_residual", json_real(max_cart)},
                {"mesh_nodes", mesh->node_count()},
                {"mesh_max_relative_residual", json_real(max_mesh)},
                {"weak_qs_estimate", json_real(wqs.estimate)}};
    Json w = Json::array();
    for (const auto& row : wqs.table) w.push_back({{"t", row.key}, {"ratio", row.value}});
    rep.data["weak_qs_witnesses"] = w;
    return rep;
}

/// The three-piece shear of the upper half-plane.
inline RunReport repro_example_1_8(const ReproOptions& opt) {
    RunReport rep;
    rep.command = "repro example-1-8";
    rep.line("seed", std::to_string(opt.seed));
    const auto f = MapSpec::half_plane_shear();
    const double sqrt3 = std::sqrt(3.0);

    const auto mesh = build_mesh(f.source_ptr(), 0.1, MeshClip{Rect{-4.0, 0.0, 4.0, 8.0}, 0.05});
    SampleSpec spec;
    spec.seed = opt.seed;
    spec.count = 200;
    spec.window = Rect{-2.0, 0.25, 2.0, 2.5};
    const auto scatter = semisolid_scatter(f, *mesh, *mesh, spec);
    const auto fit = semisolid_fit(f, *mesh, *mesh, spec, scatter);
    std::size_t bad = 0, id = 0;
    for (const auto& s : scatter) {
        const bool ok = s.k_image <= sqrt3 * s.k * 1.05;
        bad += ok ? 0 : 1;
        rep.rows.push_back({id++, s.x, s.y, s.k_image, s.k, std::numeric_limits<double>::quiet_NaN(), sqrt3 * s.k * 1.05, ok});
        rep.plot.push_back({s.k, s.k_image});
    }
    rep.plot_x = "k(x,y)";
    rep.plot_y = "k(fx,fy)";
    rep.line("mesh nodes", std::to_string(mesh->node_count()));
    rep.line("slope", fmt_real(fit.estimate));
    rep.check("k' <= sqrt3 k (1 + 5%) on 200 mesh pairs", bad == 0, std::to_string(bad) + " violations");

    const std::vector<double> ns = opt.witness.empty() ? std::vector<double>{1.0, 10.0, 100.0} : opt.witness;
    Json w = Json::array();
    for (double n : ns) {
        if (!(n >= 1.0)) throw ConfigurationError("shear witness needs n >= 1");
        const auto [o, a, b] = shear_witness(n, 0.5, 0.25);
        const double ratio = wqs_ratio(f, o, a, b);
        const double expect = 2.0 * std::sqrt(5.0) / 5.0 * (n + 1.0);
        const double err = std::abs(ratio - expect) / expect;
        rep.rows.push_back({id++, a, b, ratio, expect, std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::quiet_NaN(), err <= 1e-12});
        rep.line("witness n=" + fmt_real(n), fmt_real(ratio));
        rep.check("local weak-QS witness n = " + fmt_real(n) + " gives (2 sqrt5 / 5)(n+1)", err <= 1e-12,
                  "ratio = " + fmt_real(ratio, 17) + ", expected " + fmt_real(expect, 17));
        if (opt.h) {
            rep.check("witness n = " + fmt_real(n) + " exceeds H = " + fmt_real(*opt.h), ratio > *opt.h,
                      "ratio = " + fmt_real(ratio));
        }
        w.push_back({{"n", n}, {"ratio", ratio}, {"expected", expect}});
    }
    rep.data = {{"suite", "example-1-8"},
                {"seed", opt.seed},
                {"mesh_nodes", mesh->node_count()},
                {"pairs", scatter.size()},
                {"violations", bad},
                {"slope", json_real(fit.estimate)},
                {"mu", json_real(fit.scalar("mu"))},
                {"alpha", json_real(fit.scalar("alpha"))},
                {"witnesses", w}};
    return rep;
}

/// The frame [-2,2]x[0,1], the region Omega and the open bottom side D.
inline RunReport repro_example_3_1(const ReproOptions& opt) {
    RunReport rep;
    rep.command = "repro example-3-1";
    rep.line("seed", std::to_string(opt.seed));
    const auto frame = builtin::frame_complex();
    const auto omega = builtin::frame_minus_top_middle(frame);
    const auto bottom = builtin::frame_bottom_side(frame);
    const Point2 z{0.0, 0.0};

    const double d_bottom = boundary_distance(*bottom, z);
    const double d_omega = boundary_distance(*omega, z);
    rep.check("delta_D((0,0)) = 2", d_bottom == 2.0, "got " + fmt_real(d_bottom, 17));
    rep.check("delta_Omega((0,0)) = sqrt2", d_omega == std::sqrt(2.0), "got " + fmt_real(d_omega, 17));

    const Point2 top{0.0, 1.0};
    const double d = length_distance(*frame, z, top, 0.01);
    const double ratio = d / dist(z, top);
    rep.check("quasiconvexity witness (0,0)-(0,1) has ratio 5", ratio == 5.0, "got " + fmt_real(ratio, 17));
    const auto qc = quasiconvexity_estimate(*frame, 400, opt.seed);
    rep.check("sampled quasiconvexity ratio <= 5", qc.c_hat <= 5.0 + 1e-9, "c-hat = " + fmt_real(qc.c_hat));

    const double h = 1.0 / 32.0;
    const auto ball_omega = component_ball(*omega, z, std::sqrt(2.0), h);
    const auto ball_bottom = component_ball(*bottom, z, 2.0, h);
    bool subset = true;
    for (const auto& p : ball_omega.nodes) subset = subset && ball_bottom.contains_node(p);
    const bool strict = ball_omega.nodes.size() < ball_bottom.nodes.size();
    rep.line("Omega ball nodes", std::to_string(ball_omega.nodes.size()));
    rep.line("D ball nodes", std::to_string(ball_bottom.nodes.size()));
    rep.check("B^Omega(z, sqrt2) is a strict subset of B^D(z, 2)", subset && strict,
              std::to_string(ball_omega.nodes.size()) + " vs " + std::to_string(ball_bottom.nodes.size()) + " nodes");

    rep.rows.push_back({0, z, z, d_bottom, 2.0, std::numeric_limits<double>::quiet_NaN(),
                        std::numeric_limits<double>::quiet_NaN(), d_bottom == 2.0});
    rep.rows.push_back({1, z, z, d_omega, std::sqrt(2.0), std::numeric_limits<double>::quiet_NaN(),
                        std::numeric_limits<double>::quiet_NaN(), d_omega == std::sqrt(2.0)});
    rep.rows.push_back({2, z, top, ratio, 5.0, std::numeric_limits<double>::quiet_NaN(),
                        std::numeric_limits<double>::quiet_NaN(), ratio == 5.0});
    rep.data = {{"suite", "example-3-1"},
                {"seed", opt.seed},
                {"delta_D", d_bottom},
                {"delta_Omega", d_omega},
                {"quasiconvexity_witness", ratio},
                {"quasiconvexity_sampled", json_real(qc.c_hat)},
                {"ball_resolution", h},
                {"omega_ball_nodes", ball_omega.nodes.size()},
                {"d_ball_nodes", ball_bottom.nodes.size()}};
    return rep;
}

/// Comparison of |.| and k_G on every built-in domain, 200 pairs each.
inline RunReport repro_lemma_3_4(const ReproOptions& opt) {
    RunReport rep;
    rep.command = "repro lemma-3-4";
    rep.line("seed", std::to_string(opt.seed));
    rep.data = {{"suite", "lemma-3-4"}, {"seed", opt.seed}, {"domains", Json::array()}};
    std::size_t id = 0, di = 0;
    for (const auto& dom : detail::suite_domains()) {
        const auto mesh = build_mesh(dom.region, dom.grading, dom.clip);
        Lemma34Options o;
        o.seed = opt.seed + di++;
        o.count = 200;
        o.c = dom.c;
        o.eps = 0.05;
        o.window = dom.window;
        const auto res = lemma34_check(*mesh, o);
        for (const auto& r : res.rows) {
            const double oracle = dom.analytic ? qh_distance_exact(*dom.analytic, r.x, r.y) : r.oracle;
            rep.rows.push_back({id++, r.x, r.y, r.k, oracle, detail::nan_max(r.bound2_lo, r.bound3_lo),
                                detail::nan_min(r.bound2_hi, r.bound3_hi), r.pass});
        }
        rep.line(dom.name + " nodes", std::to_string(mesh->node_count()));
        rep.check("0 violations of the comparison bounds on " + dom.name, res.violations.empty(),
                  std::to_string(res.violations.size()) + " of " + std::to_string(res.rows.size()) + " pairs (c = " +
                      fmt_real(dom.c) + ")");
        rep.data["domains"].push_back({{"domain", dom.name},
                                       {"c", dom.c},
                                       {"grading", dom.grading},
                                       {"nodes", mesh->node_count()},
                                       {"pairs", res.rows.size()},
                                       {"violations", res.violations.size()}});
    }
    return rep;
}

/// Comparison of |.| with the length metric d and of k with k', 200 pairs per domain.
inline RunReport repro_lemma_3_6(const ReproOptions& opt) {
    RunReport rep;
    rep.command = "repro lemma-3-6";
    rep.line("seed", std::to_string(opt.seed));
    rep.data = {{"suite", "lemma-3-6"}, {"seed", opt.seed}, {"domains", Json::array()}};
    std::size_t id = 0, di = 0;
    for (const auto& dom : detail::suite_domains()) {
        const auto mesh = build_mesh(dom.region, dom.grading, dom.clip);
        const auto mesh_len = build_mesh(dom.region, dom.grading, dom.clip, MetricMode::Length);
        const auto res = lemma36_check(*mesh, *mesh_len, opt.seed + di++, 200, dom.c, 0.05, dom.window);
        for (const auto& r : res.rows) {
            rep.rows.push_back({id++, r.x, r.y, r.k_length, r.k, r.k / dom.c, dom.c * r.k, r.pass});
        }
        rep.check("0 violations of the length-metric bounds on " + dom.name, res.violations.empty(),
                  std::to_string(res.violations.size()) + " of " + std::to_string(res.rows.size()) + " pairs (c = " +
                      fmt_real(dom.c) + ")");
        rep.data["domains"].push_back({{"domain", dom.name},
                                       {"c", dom.c},
                                       {"nodes", mesh->node_count()},
                                       {"pairs", res.rows.size()},
                                       {"violations", res.violations.size()}});
    }
    return rep;
}

inline RunReport run_repro(const std::string& name, const ReproOptions& opt) {
    if (name == "example-1-1") return repro_example_1_1(opt);
    if (name == "example-1-8") return repro_example_1_8(opt);
    if (name == "example-3-1") return repro_example_3_1(opt);
    if (name == "lemma-3-4") return repro_lemma_3_4(opt);
    if (name == "lemma-3-6") return repro_lemma_3_6(opt);
    throw ConfigurationError("unknown repro suite '" + name + "'");
}

}  // namespace qhkit
