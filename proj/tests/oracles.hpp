#pragma once

// Reference values computed without touching the library's own formulas:
// geodesic quadrature in the half-plane, a discretized log spiral in the
// punctured plane, arclength on the frame cycle and constants re-derived in
// long double.

#include <cmath>
#include <cstddef>
#include <numbers>

#include "qhkit/geometry.hpp"

namespace oracle {

using qhkit::Point2;

/// Composite Simpson rule with n (even) panels.
template <class F>
long double simpson(F f, long double a, long double b, std::size_t n = 20000) {
    const long double h = (b - a) / static_cast<long double>(n);
    long double s = f(a) + f(b);
    for (std::size_t i = 1; i < n; ++i) s += (i % 2 ? 4.0L : 2.0L) * f(a + h * static_cast<long double>(i));
    return s * h / 3.0L;
}

/// Hyperbolic length of the geodesic from x to y in the upper half-plane,
/// integrated numerically along the vertical line or the orthogonal
/// semicircle joining them.
inline double halfplane_geodesic_length(Point2 x, Point2 y) {
    if (std::abs(x.x - y.x) < 1e-14) {
        const long double a = std::min(x.y, y.y), b = std::max(x.y, y.y);
        return static_cast<double>(simpson([](long double t) { return 1.0L / t; }, a, b));
    }
    // Centre on the real axis equidistant from x and y.
    const long double cx = ((long double)y.x * y.x + (long double)y.y * y.y - (long double)x.x * x.x -
                            (long double)x.y * x.y) /
                           (2.0L * ((long double)y.x - x.x));
    long double a = std::atan2((long double)x.y, (long double)x.x - cx);
    long double b = std::atan2((long double)y.y, (long double)y.x - cx);
    if (a > b) std::swap(a, b);
    // |dz| = R dphi and Im z = R sin phi, so R cancels.
    return static_cast<double>(simpson([](long double p) { return 1.0L / std::sin(p); }, a, b));
}

/// Quasihyperbolic length of the log spiral from x to y in the plane minus
/// the origin, summed over n chords with |dz| / |z| at chord midpoints.
inline double punctured_spiral_length(Point2 x, Point2 y, std::size_t n = 200000) {
    const long double r1 = std::log(std::hypot((long double)x.x, (long double)x.y));
    const long double r2 = std::log(std::hypot((long double)y.x, (long double)y.y));
    const long double t1 = std::atan2((long double)x.y, (long double)x.x);
    long double t2 = std::atan2((long double)y.y, (long double)y.x);
    const long double pi = std::numbers::pi_v<long double>;
    while (t2 - t1 > pi) t2 -= 2 * pi;
    while (t1 - t2 > pi) t2 += 2 * pi;
    auto at = [&](long double s, long double& px, long double& py) {
        const long double r = std::exp(r1 + s * (r2 - r1)), t = t1 + s * (t2 - t1);
        px = r * std::cos(t);
        py = r * std::sin(t);
    };
    long double total = 0.0L, ax, ay, bx, by;
    at(0.0L, ax, ay);
    for (std::size_t i = 1; i <= n; ++i) {
        at(static_cast<long double>(i) / n, bx, by);
        const long double mx = (ax + bx) / 2, my = (ay + by) / 2;
        total += std::hypot(bx - ax, by - ay) / std::hypot(mx, my);
        ax = bx;
        ay = by;
    }
    return static_cast<double>(total);
}

/// Arclength position of a point on the boundary of [-2,2]x[0,1], measured
/// counterclockwise from (-2,0). Perimeter 10.
inline double frame_arclength(Point2 p) {
    const double tol = 1e-12;
    if (std::abs(p.y) < tol) return p.x + 2.0;
    if (std::abs(p.x - 2.0) < tol) return 4.0 + p.y;
    if (std::abs(p.y - 1.0) < tol) return 5.0 + (2.0 - p.x);
    return 9.0 + (1.0 - p.y);
}

/// Length distance along the frame: the shorter way around the cycle.
inline double frame_length_distance(Point2 a, Point2 b) {
    const double d = std::abs(frame_arclength(a) - frame_arclength(b));
    return std::min(d, 10.0 - d);
}

/// Constants recomputed in long double from their definitions.
struct Constants {
    long double M, alpha, beta, t0, A;
};

inline Constants chain(long double H, long double q, long double c, long double cprime) {
    Constants k{};
    k.M = 2 * H * H * (H + 1);
    k.alpha = 3;
    k.beta = 6 * c / q;
    k.t0 = 1 / (2 * c * std::pow(2 * c * k.alpha, 3) * k.beta);
    k.A = 2 * k.M * k.M * cprime * std::log(2 * c * k.alpha);
    return k;
}

inline long double theta(const Constants& k, long double t) { return k.A / std::log(k.t0 / t); }

inline long double k0(long double c) { return std::log(2.0L) / std::log((1 + 2 * c) / (2 * c)) + 1; }

}  // namespace oracle
