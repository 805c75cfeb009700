#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qhkit/random.hpp"
#include "qhkit/spaces.hpp"

using namespace qhkit;

TEST(Spaces, Membership) {
    auto h = builtin::upper_half_plane();
    EXPECT_TRUE(h->contains({0, 1}));
    EXPECT_FALSE(h->contains({0, 0}));
    EXPECT_FALSE(h->contains({3, -1}));

    auto p = builtin::punctured_plane();
    EXPECT_TRUE(p->contains({1e-9, 0}));
    EXPECT_FALSE(p->contains({0, 0}));

    auto d = builtin::unit_disk();
    EXPECT_TRUE(d->contains({0.99, 0}));
    EXPECT_FALSE(d->contains({1, 0}));

    auto omega = builtin::frame_minus_top_middle();
    EXPECT_TRUE(omega->contains({0, 0}));
    EXPECT_TRUE(omega->contains({-2, 0.5}));
    EXPECT_TRUE(omega->contains({1.5, 1}));
    EXPECT_FALSE(omega->contains({0, 1}));
    EXPECT_FALSE(omega->contains({1, 1}));
    EXPECT_FALSE(omega->contains({0, 0.5}));

    auto bottom = builtin::frame_bottom_side();
    EXPECT_TRUE(bottom->contains({0, 0}));
    EXPECT_FALSE(bottom->contains({-2, 0}));
    EXPECT_FALSE(bottom->contains({2, 0.5}));
}

TEST(Spaces, BoundaryDistancesExact) {
    EXPECT_EQ(boundary_distance(*builtin::upper_half_plane(), {3, 2}), 2.0);
    EXPECT_EQ(boundary_distance(*builtin::punctured_plane(), {3, 4}), 5.0);
    EXPECT_DOUBLE_EQ(boundary_distance(*builtin::unit_disk(), {0.6, 0}), 0.4);

    auto frame = builtin::frame_complex();
    auto omega = builtin::frame_minus_top_middle(frame);
    auto bottom = builtin::frame_bottom_side(frame);
    EXPECT_EQ(boundary_distance(*bottom, {0, 0}), 2.0);
    EXPECT_EQ(boundary_distance(*omega, {0, 0}), std::sqrt(2.0));
    // Along the frame the nearest end of the removed segment is 2 + 1 + 1 away.
    EXPECT_EQ(length_boundary_distance(*omega, {0, 0}), 4.0);
    EXPECT_EQ(length_boundary_distance(*bottom, {0, 0}), 2.0);
    EXPECT_THROW(boundary_distance(*omega, {0, 1}), MembershipError);
}

TEST(Spaces, FrameLengthDistanceMatchesCycle) {
    auto frame = builtin::frame_complex();
    SeedStream rng(17);
    for (int i = 0; i < 300; ++i) {
        const Point2 a = frame->complex().sample(rng);
        const Point2 b = frame->complex().sample(rng);
        EXPECT_NEAR(length_distance(*frame, a, b, 0.01), oracle::frame_length_distance(a, b), 1e-12);
        EXPECT_GE(length_distance(*frame, a, b, 0.01), dist(a, b) - 1e-12);
    }
}

TEST(Spaces, FrameQuasiconvexity) {
    auto frame = builtin::frame_complex();
    EXPECT_DOUBLE_EQ(length_distance(*frame, {0, 0}, {0, 1}, 0.01), 5.0);
    const auto est = quasiconvexity_estimate(*frame, 400, 3);
    EXPECT_GE(est.c_hat, 1.0);
    EXPECT_LE(est.c_hat, 5.0 + 1e-12);
    EXPECT_EQ(est.pairs, 200u);

    const auto flat = quasiconvexity_estimate(*builtin::plane(), 100, 3);
    EXPECT_EQ(flat.c_hat, 1.0);
}

TEST(Spaces, PolygonLengthDistanceAroundReflexCorner) {
    PolygonWithHoles poly{{{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}}};
    const auto s = SpaceModel::plane(poly);
    const Point2 x{1.8, 0.6}, y{0.6, 1.8};
    const double exact = dist(x, {1, 1}) + dist({1, 1}, y);
    const double d = length_distance(s, x, y, 0.01);
    EXPECT_GE(d, exact * (1 - 1e-9));
    EXPECT_LE(d, exact * 1.01);
    // Visible pairs are straight.
    EXPECT_NEAR(length_distance(s, {0.2, 0.2}, {1.8, 0.8}, 0.01), dist({0.2, 0.2}, {1.8, 0.8}), 1e-12);
    EXPECT_FALSE(s.length_is_ambient());
}

TEST(Spaces, ComponentBallInHalfPlane) {
    auto h = builtin::upper_half_plane();
    const auto ball = component_ball(*h, {0, 1}, 1.5, 0.05);
    ASSERT_FALSE(ball.nodes.empty());
    for (const auto& p : ball.nodes) {
        EXPECT_LT(dist(p, {0, 1}), 1.5);
        EXPECT_TRUE(h->contains(p));
    }
    EXPECT_TRUE(ball.contains_node({0, 1}));
    EXPECT_TRUE(std::is_sorted(ball.nodes.begin(), ball.nodes.end(), lex_less));
    EXPECT_LE(ball.rim_distance(), 1.5 + 2 * 0.05);
}

TEST(Spaces, FrameComponentBallsStrictlyNested) {
    auto frame = builtin::frame_complex();
    auto omega = builtin::frame_minus_top_middle(frame);
    auto bottom = builtin::frame_bottom_side(frame);
    const double h = 1.0 / 32.0;
    const auto bo = component_ball(*omega, {0, 0}, std::sqrt(2.0), h);
    const auto bd = component_ball(*bottom, {0, 0}, 2.0, h);
    EXPECT_LT(bo.nodes.size(), bd.nodes.size());
    for (const auto& p : bo.nodes) EXPECT_TRUE(bd.contains_node(p));
    // Both balls are the same open segment of the bottom side at two lengths.
    for (const auto& p : bd.nodes) EXPECT_EQ(p.y, 0.0);
}

TEST(Spaces, Errors) {
    auto frame = builtin::frame_complex();
    EXPECT_THROW(Region(frame, UpperHalfPlane{}), ConfigurationError);
    EXPECT_THROW(Region(builtin::plane(), ComplexSubset{}), ConfigurationError);
    EXPECT_THROW(SpaceModel::plane(Disk{{0, 0}, 0.0}), ConfigurationError);
    EXPECT_THROW(length_distance(*builtin::plane(), {0, 0}, {1, 0}, 0.0), ConfigurationError);
    EXPECT_THROW(component_ball(*builtin::upper_half_plane(), {0, 1}, 0.01, 0.5), ResolutionError);
    EXPECT_THROW(component_ball(*builtin::upper_half_plane(), {0, -1}, 1.0, 0.1), MembershipError);
    EXPECT_THROW(quasiconvexity_estimate(*frame, 1, 0), ConfigurationError);
}
