#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "qhkit/geometry.hpp"

namespace qhkit {

/// Deterministic stream of uniform variates.
///
/// Wraps std::mt19937_64 (whose output sequence is fixed by the standard) and
/// converts raw words to doubles by hand, so streams are bit-identical across
/// standard library implementations. Sampling code draws from one stream in
/// order, which makes sample i depend only on the seed and on samples < i.
class SeedStream {
public:
    explicit SeedStream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double angle() { return uniform(0.0, 2.0 * std::numbers::pi); }

    Point2 in_rect(const Rect& r) { return {uniform(r.xmin, r.xmax), uniform(r.ymin, r.ymax)}; }

    /// Uniform point in the open disk of the given center and radius.
    Point2 in_disk(Point2 center, double radius) {
        const double rho = radius * std::sqrt(uniform());
        const double th = angle();
        return {center.x + rho * std::cos(th), center.y + rho * std::sin(th)};
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

}  // namespace qhkit
