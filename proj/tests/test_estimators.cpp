#include <gtest/gtest.h>

#include <cmath>

#include "qhkit/estimators.hpp"

using namespace qhkit;

namespace {

SampleSpec spec(std::uint64_t seed, std::size_t count) {
    SampleSpec s;
    s.seed = seed;
    s.count = count;
    return s;
}

}  // namespace

TEST(Estimators, IdentityIsExactlyOne) {
    const auto f = MapSpec::identity(builtin::upper_half_plane());
    auto s = spec(1, 200);
    s.radius_schedule = {0.1, 0.05, 0.01};
    const auto qc = estimate_qc(f, s);
    EXPECT_EQ(qc.estimate, 1.0);
    for (const auto& row : qc.table) EXPECT_EQ(row.value, 1.0);
    EXPECT_EQ(estimate_weak_qs(f, s).estimate, 1.0);
    EXPECT_EQ(estimate_local_weak_qs(f, s).estimate, 1.0);

    const auto mesh = build_mesh(f.source_ptr(), 0.1, MeshClip{Rect{-4, 0, 4, 4}, 0.05});
    auto ss = spec(2, 50);
    ss.window = Rect{-1.5, 0.25, 1.5, 2.5};
    const auto semi = estimate_semisolid(f, *mesh, *mesh, ss);
    EXPECT_EQ(semi.estimate, 1.0);
    EXPECT_EQ(semi.scalar("slope"), 1.0);
}

TEST(Estimators, AffineStretchHasDistortionTwo) {
    auto h = builtin::upper_half_plane();
    const auto f = MapSpec::affine({2, 0, 0, 1, 0, 0}, h, h);
    auto s = spec(5, 50);
    s.radius_schedule = {0.1, 0.01};
    const auto rep = estimate_qc(f, s);
    EXPECT_NEAR(rep.estimate, 2.0, 1e-12);
    EXPECT_NEAR(replay_witness(f, rep), rep.estimate, 1e-15);
    // Weak quasisymmetry of a linear map is bounded by its distortion.
    EXPECT_LE(estimate_weak_qs(f, s).estimate, 2.0 + 1e-12);
}

TEST(Estimators, InversionWeakQsWitnesses) {
    const auto f = MapSpec::inversion();
    auto s = spec(7, 100);
    s.witness_params = {2, 10, 100};
    const auto rep = estimate_weak_qs(f, s);
    ASSERT_EQ(rep.table.size(), 3u);
    for (const auto& row : rep.table) EXPECT_NEAR(row.value, row.key, 1e-12 * row.key);
    EXPECT_GE(rep.estimate, 100.0 * (1 - 1e-12));
    EXPECT_EQ(replay_witness(f, rep), rep.estimate);
    EXPECT_THROW(estimate_weak_qs(f, [&] { auto t = s; t.witness_params = {1.0}; return t; }()), ConfigurationError);
}

TEST(Estimators, ShearLocalWitnesses) {
    const auto f = MapSpec::half_plane_shear();
    auto s = spec(8, 50);
    s.witness_params = {1, 10, 100};
    const auto rep = estimate_local_weak_qs(f, s);
    ASSERT_EQ(rep.table.size(), 3u);
    for (const auto& row : rep.table) {
        const double expected = 2.0 * std::sqrt(5.0) / 5.0 * (row.key + 1.0);
        EXPECT_NEAR(row.value, expected, 1e-12 * expected);
    }
    const auto w = shear_witness(10, 0.5, 0.25);
    EXPECT_EQ(dist(w[0], w[1]), dist(w[0], w[2]));
}

TEST(Estimators, ShearSemisolidSlopeBelowRootThree) {
    const auto f = MapSpec::half_plane_shear();
    const auto mesh = build_mesh(f.source_ptr(), 0.1, MeshClip{Rect{-4, 0, 4, 8}, 0.05});
    auto s = spec(9, 60);
    s.window = Rect{-2, 0.25, 2, 2.5};
    const auto rep = estimate_semisolid(f, *mesh, *mesh, s);
    EXPECT_LE(rep.estimate, std::sqrt(3.0) * 1.05);
    EXPECT_GT(rep.estimate, 1.0);
    EXPECT_EQ(replay_semisolid(f, *mesh, *mesh, rep), rep.estimate);
    EXPECT_LE(rep.scalar("mu"), rep.scalar("slope"));
}

TEST(Estimators, InversionRelativeEnvelope) {
    const auto f = MapSpec::inversion();
    auto s = spec(10, 400);
    const auto rep = estimate_relative(f, s, 0.5);
    ASSERT_EQ(rep.table.size(), 10u);
    double prev = 0.0;
    for (const auto& row : rep.table) {
        // |f x - f y| / |f x| = |x - y| / |y| <= t / (1 - t).
        EXPECT_LE(row.value, row.key / (1 - row.key) * (1 + 1e-12));
        EXPECT_GE(row.value, prev);
        prev = row.value;
    }
    EXPECT_EQ(replay_witness(f, rep), rep.estimate);
}

TEST(Estimators, IdentityRingRatio) {
    const auto f = MapSpec::identity(builtin::unit_disk());
    const auto [ratio, pts] = ring_ratio(f, {0.1, 0.2}, 0.05, 2.0, 64, 0.05 / 8);
    EXPECT_NEAR(ratio, 2.0, 1e-9);
    EXPECT_EQ(pts.size(), 5u);
    auto s = spec(3, 40);
    const auto rep = estimate_ring(f, s, 3.0, 4.0);
    EXPECT_NEAR(rep.estimate, 1.0, 1e-9);
    EXPECT_NEAR(replay_witness(f, rep), rep.estimate, 1e-15);
}

TEST(Estimators, SameSeedSameReport) {
    const auto f = MapSpec::inversion();
    auto s = spec(42, 100);
    s.witness_params = {2, 10};
    const auto a = estimate_weak_qs(f, s);
    const auto b = estimate_weak_qs(f, s);
    EXPECT_EQ(a.estimate, b.estimate);
    EXPECT_EQ(a.witness.points, b.witness.points);
    s.seed = 43;
    s.witness_params.clear();
    EXPECT_NE(estimate_weak_qs(f, s).witness.points, a.witness.points);
}

TEST(Estimators, ConfigurationErrors) {
    const auto f = MapSpec::identity(builtin::unit_disk());
    auto s = spec(1, 10);
    EXPECT_THROW(estimate_qc(f, s), ConfigurationError);
    s.radius_schedule = {0.1, 0.2};
    EXPECT_THROW(estimate_qc(f, s), ConfigurationError);
    s.radius_schedule.clear();
    EXPECT_THROW(estimate_ring(f, s, 1.0, 4.0), ConfigurationError);
    EXPECT_THROW(estimate_relative(f, s, 1.5), ConfigurationError);
    s.locality_q = 1.0;
    EXPECT_THROW(estimate_local_weak_qs(f, s), ConfigurationError);

    const auto h = MapSpec::half_plane_shear();
    const auto disk_mesh = build_mesh(builtin::unit_disk(), 0.2, MeshClip{std::nullopt, 0.05});
    EXPECT_THROW(estimate_semisolid(h, *disk_mesh, *disk_mesh, spec(1, 5)), ConfigurationError);
}
