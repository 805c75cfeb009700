#pragma once

// Closed-form constants and control functions linking semisolidity,
// relativity, the ring property and local weak quasisymmetry.
//
// Two different quantities are written M in the source material: the ring
// constant 2H^2(H+1) is `M`, and theta(2c/(1+2c)) is `thetaM`. Likewise two
// thresholds are written t0: `t0` is the relativity threshold and
// `t0_semisolid` is the one used for the exponents K1, K2.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <tuple>
#include <vector>

#include "qhkit/errors.hpp"

namespace qhkit {

using RealFn = std::function<double(double)>;

inline constexpr double kC0 = 1.3660254037844386;  // (1 + sqrt 3) / 2

namespace detail {

inline void require_range(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

inline void check_hcq(double H, double c, double q) {
    require_range(std::isfinite(H) && H >= 1.0, "H must be >= 1");
    require_range(std::isfinite(c) && c >= 1.0, "c must be >= 1");
    require_range(q > 0.0 && q < 1.0, "q must lie in (0,1)");
}

}  // namespace detail

struct RingConstants {
    double M = 0.0;
    double alpha_ring = 0.0;
    double beta = 0.0;
};

inline RingConstants ring_constants(double H, double c, double q) {
    detail::check_hcq(H, c, q);
    return {2.0 * H * H * (H + 1.0), 3.0, 6.0 * c / q};
}

inline double k0(double c) {
    detail::require_range(std::isfinite(c) && c >= 1.0, "c must be >= 1");
    return std::log(2.0) / (std::log1p(2.0 * c) - std::log(2.0 * c)) + 1.0;
}

inline double qprime(double c) {
    detail::require_range(std::isfinite(c) && c >= 1.0, "c must be >= 1");
    return 1.0 / std::pow(2.0 + c, 3);
}

/// Locality of the length-metric route: 1/((2+c0)^3 c).
inline double q_lemma42(double c) {
    detail::require_range(std::isfinite(c) && c >= 1.0, "c must be >= 1");
    return 1.0 / (std::pow(2.0 + kC0, 3) * c);
}

inline double t0_relative(double c, double alpha_ring, double beta) {
    detail::require_range(c >= 1.0 && alpha_ring > 0.0 && beta > 0.0, "t0 needs c >= 1, alpha > 0, beta > 0");
    const double s = 2.0 * c * alpha_ring;
    return 1.0 / (2.0 * c * s * s * s * beta);
}

/// Numerator 2 M^2 c' log(2c alpha); theta(t) = A / log(t0/t).
inline double theta_numerator(double c, double cprime, double M, double alpha_ring) {
    return 2.0 * M * M * cprime * std::log(2.0 * c * alpha_ring);
}

/// Relative control produced from the ring property. theta(0) = 0 is the limit value.
inline double theta_lemma52(double t, double c, double cprime, double M, double alpha_ring, double beta) {
    detail::require_range(c >= 1.0 && cprime >= 1.0 && M > 0.0, "theta needs c, c' >= 1 and M > 0");
    const double t0 = t0_relative(c, alpha_ring, beta);
    detail::require_range(t >= 0.0 && t < t0, "theta is defined on [0, t0)");
    if (t == 0.0) return 0.0;
    const double s = 2.0 * c * alpha_ring;
    return theta_numerator(c, cprime, M, alpha_ring) / std::log(1.0 / (2.0 * c * s * s * s * beta * t));
}

/// Closed-form inverse of theta_lemma52: t0 exp(-A/y).
inline double theta_lemma52_inverse(double y, double c, double cprime, double M, double alpha_ring, double beta) {
    detail::require_range(y >= 0.0, "theta inverse needs y >= 0");
    if (y == 0.0) return 0.0;
    const double t0 = t0_relative(c, alpha_ring, beta);
    return t0 * std::exp(-theta_numerator(c, cprime, M, alpha_ring) / y);
}

/// Upper bound for k_D(x,y) in terms of t = |x-y|/delta_D(x).
inline double theta0_relative(double t, double c) {
    detail::require_range(c >= 1.0, "c must be >= 1");
    detail::require_range(t >= 0.0 && t < 1.0, "theta0 is defined on [0,1)");
    if (t <= 1.0 / (3.0 * c)) return 3.0 * c * (3.0 * c + 1.0) / (3.0 * c - 1.0) * t;
    return (1.0 + t) / (1.0 - t);
}

/// exp(phi(theta0(t))) - 1, the relative control induced by a semisolid control phi.
inline RealFn relative_from_semisolid(RealFn phi, double c) {
    return [phi = std::move(phi), c](double t) { return std::expm1(phi(theta0_relative(t, c))); };
}

inline double eta_knot(double c) { return 2.0 * c / (1.0 + 2.0 * c); }

/// Slope and intercept of the middle branch of eta'.
inline std::pair<double, double> eta_prime_line(double c, double H) {
    const double top = (1.0 + c) * std::pow(H, 1.0 + c);
    return {(1.0 + 2.0 * c) * (top - H), -2.0 * c * top + (1.0 + 2.0 * c) * H};
}

/// Three-branch local QS control. `theta` is the relative control and
/// thetaM should equal theta(2c/(1+2c)) for the branches to join.
inline double eta_prime(double t, double c, double thetaM, double H, const RealFn& theta) {
    detail::require_range(t >= 0.0, "eta' needs t >= 0");
    detail::require_range(thetaM > 0.0, "thetaM must be positive");
    if (t <= eta_knot(c)) return H / thetaM * theta(t);
    if (t <= 1.0) {
        const auto [a, b] = eta_prime_line(c, H);
        return a * t + b;
    }
    return (1.0 + c * t) * std::pow(H, 1.0 + c * t);
}

/// eta' built from a semisolid control phi (identity when omitted).
inline double eta_prime(double t, double c, double H, const RealFn& phi = {}) {
    const RealFn theta = relative_from_semisolid(phi ? phi : RealFn([](double s) { return s; }), c);
    return eta_prime(t, c, theta(eta_knot(c)), H, theta);
}

struct SemisolidExponents {
    double K1 = 0.0;
    double K2 = 0.0;
    double K = 0.0;
};

inline SemisolidExponents semisolid_exponents(double phi_t0, double t0, double K0, double alpha_exp, double c,
                                              double cprime, double q) {
    detail::require_range(t0 > 0.0, "t0 must be positive");
    detail::require_range(phi_t0 > 0.0 && K0 > 0.0 && c > 0.0 && cprime > 0.0 && q > 0.0,
                          "exponent inputs must be positive");
    detail::require_range(alpha_exp > 0.0 && alpha_exp <= 1.0, "alpha_exp must lie in (0,1]");
    SemisolidExponents e;
    e.K1 = 3.0 * cprime * cprime * K0 * std::pow(2.0 + c, 2.0 * alpha_exp) * std::pow(q, -alpha_exp);
    e.K2 = 2.0 * phi_t0 / t0;
    e.K = std::max(e.K1, e.K2);
    return e;
}

/// Sampled increasing function with phi(first grid point 0) = 0, linear between samples.
struct FunctionTable {
    std::vector<double> t;
    std::vector<double> v;

    static FunctionTable tabulate(const RealFn& f, const std::vector<double>& grid) {
        FunctionTable out;
        out.t = grid;
        out.v.reserve(grid.size());
        for (double s : grid) out.v.push_back(f(s));
        return out;
    }

    void validate() const {
        if (t.size() != v.size() || t.size() < 2) throw ValidationError("function table needs >= 2 matching samples");
        if (t.front() != 0.0 || v.front() != 0.0) throw ValidationError("function table must fix 0");
        for (std::size_t i = 1; i < t.size(); ++i) {
            if (!(t[i] > t[i - 1])) throw ValidationError("function table grid must be strictly increasing");
            if (!(v[i] >= v[i - 1])) throw ValidationError("function table is not monotone");
        }
    }

    double operator()(double s) const {
        if (s < t.front() || s > t.back()) throw DomainError("argument outside the tabulated range");
        const auto it = std::upper_bound(t.begin(), t.end(), s);
        if (it == t.end()) return v.back();
        const std::size_t i = static_cast<std::size_t>(it - t.begin());
        const double w = (s - t[i - 1]) / (t[i] - t[i - 1]);
        return v[i - 1] + w * (v[i] - v[i - 1]);
    }
};

/// phi2 o phi1 on the grid of phi1.
inline FunctionTable compose_semisolid(const FunctionTable& phi1, const FunctionTable& phi2) {
    phi1.validate();
    phi2.validate();
    FunctionTable out;
    out.t = phi1.t;
    out.v.reserve(phi1.v.size());
    for (double y : phi1.v) out.v.push_back(phi2(y));
    return out;
}

struct ConstantSet {
    double c = 1.0;
    double cprime = 1.0;
    double H = 1.0;
    double q = 0.5;

    double M = 0.0;
    double alpha_ring = 0.0;
    double beta = 0.0;
    double t0 = 0.0;
    double theta_A = 0.0;  // theta(t) = theta_A / log(t0/t)
    double t1 = 0.0;
    double log_t1 = 0.0;  // t1 underflows quickly; the log stays finite

    double k0 = 0.0;
    double k0_ceil = 0.0;
    double thetaM = 0.0;
    double H_lemma41 = 0.0;
    double qprime = 0.0;
    bool lemma41_applies = false;  // requires c <= c0
    double c0 = kC0;
    double q_lemma42 = 0.0;

    double K0 = 1.0;
    double alpha_exp = 1.0;
    double t0_semisolid = 0.0;
    double K1 = 0.0;
    double K2 = 0.0;
    double K = 0.0;

    double theta(double t) const { return theta_lemma52(t, c, cprime, M, alpha_ring, beta); }
    double theta_inverse(double y) const { return theta_lemma52_inverse(y, c, cprime, M, alpha_ring, beta); }
    /// 3c' theta(2t), valid for 2t < t0.
    double psi(double t) const { return 3.0 * cprime * theta(2.0 * t); }

    /// Ordered (name, value) listing used by reports.
    std::vector<std::pair<std::string, double>> fields() const {
        return {{"c", c},
                {"cprime", cprime},
                {"H", H},
                {"q", q},
                {"M", M},
                {"alpha", alpha_ring},
                {"beta", beta},
                {"t0", t0},
                {"theta_A", theta_A},
                {"t1", t1},
                {"log_t1", log_t1},
                {"k0", k0},
                {"k0_ceil", k0_ceil},
                {"thetaM", thetaM},
                {"H_lemma41", H_lemma41},
                {"qprime", qprime},
                {"lemma41_applies", lemma41_applies ? 1.0 : 0.0},
                {"c0", c0},
                {"q_lemma42", q_lemma42},
                {"K0", K0},
                {"alpha_exp", alpha_exp},
                {"t0_semisolid", t0_semisolid},
                {"K1", K1},
                {"K2", K2},
                {"K", K}};
    }
};

struct ChainOptions {
    double K0 = 1.0;
    double alpha_exp = 1.0;
    RealFn phi;  // semisolid control; identity when empty
    RealFn phi_inverse;
};

inline ConstantSet chain_constants(double H, double q, double c, double cprime, const ChainOptions& opt = {}) {
    detail::check_hcq(H, c, q);
    detail::require_range(std::isfinite(cprime) && cprime >= 1.0, "c' must be >= 1");
    if (opt.phi && !opt.phi_inverse) throw DomainError("a custom phi needs its inverse");
    const RealFn phi = opt.phi ? opt.phi : RealFn([](double s) { return s; });
    const RealFn phi_inv = opt.phi_inverse ? opt.phi_inverse : RealFn([](double s) { return s; });

    ConstantSet s;
    s.c = c;
    s.cprime = cprime;
    s.H = H;
    s.q = q;

    const auto ring = ring_constants(H, c, q);
    s.M = ring.M;
    s.alpha_ring = ring.alpha_ring;
    s.beta = ring.beta;
    s.t0 = t0_relative(c, s.alpha_ring, s.beta);
    s.theta_A = theta_numerator(c, cprime, s.M, s.alpha_ring);
    const double log_inv = std::log(s.t0) - s.theta_A * 3.0 * cprime;
    s.log_t1 = std::log(0.5) + std::min(std::log(s.t0), log_inv);
    s.t1 = std::exp(s.log_t1);

    s.k0 = k0(c);
    s.k0_ceil = std::ceil(s.k0);
    const RealFn theta = relative_from_semisolid(phi, c);
    s.thetaM = theta(eta_knot(c));
    s.H_lemma41 = s.k0 * std::pow(s.thetaM, s.k0);
    s.qprime = qprime(c);
    s.lemma41_applies = c <= kC0;
    s.q_lemma42 = q_lemma42(c);

    s.K0 = opt.K0;
    s.alpha_exp = opt.alpha_exp;
    s.t0_semisolid = std::min(phi_inv(1.0 / (3.0 * cprime)), s.q_lemma42 / std::pow(2.0 + c, 4));
    const auto ex = semisolid_exponents(phi(s.t0_semisolid), s.t0_semisolid, s.K0, s.alpha_exp, c, cprime, s.q_lemma42);
    s.K1 = ex.K1;
    s.K2 = ex.K2;
    s.K = ex.K;
    return s;
}

}  // namespace qhkit
