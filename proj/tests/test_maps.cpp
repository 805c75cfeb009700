#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qhkit/maps.hpp"
#include "qhkit/qhgraph.hpp"
#include "qhkit/random.hpp"

using namespace qhkit;

namespace {

MapSpec stretch() {
    auto h = builtin::upper_half_plane();
    return MapSpec::affine({2, 0, 0, 1, 0, 0}, h, h);
}

void expect_round_trip(const MapSpec& f, Point2 p) {
    const Point2 back = f.invert(f.eval(p));
    EXPECT_NEAR(back.x, p.x, 1e-12 * (1 + std::abs(p.x)));
    EXPECT_NEAR(back.y, p.y, 1e-12 * (1 + std::abs(p.y)));
}

}  // namespace

TEST(Maps, RoundTrips) {
    SeedStream rng(31);
    const auto inv = MapSpec::inversion();
    const auto shear = MapSpec::half_plane_shear();
    const auto aff = stretch();
    const auto id = MapSpec::identity(builtin::unit_disk());
    for (int i = 0; i < 200; ++i) {
        const Point2 h{rng.uniform(-5, 5), rng.uniform(0.01, 5)};
        expect_round_trip(shear, h);
        expect_round_trip(aff, h);
        const Point2 z = rng.in_disk({0, 0}, 5);
        expect_round_trip(inv, z);
        const Point2 d = rng.in_disk({0, 0}, 0.99);
        EXPECT_EQ(id.eval(d), d);
    }
}

TEST(Maps, ShearFormulaAndContinuity) {
    const auto f = MapSpec::half_plane_shear();
    EXPECT_EQ(f.eval({-3, 0.5}), (Point2{-3, 0.5}));
    EXPECT_EQ(f.eval({2, 0.5}), (Point2{2, 1.5}));
    EXPECT_EQ(f.eval({2, 3}), (Point2{2, 5}));
    // The pieces agree along x = 0 and y = 1.
    for (double y : {0.1, 0.5, 1.0, 2.0}) {
        const Point2 a = f.eval({1e-12, y});
        EXPECT_NEAR(a.y, y, 1e-11);
    }
    for (double x : {0.5, 3.0, 100.0}) {
        const Point2 lo = f.eval({x, 1.0}), hi = f.eval({x, 1.0 + 1e-12});
        EXPECT_NEAR(lo.y, hi.y, 1e-10);
    }
}

TEST(Maps, InversionIsQuasihyperbolicIsometry) {
    const auto f = MapSpec::inversion();
    SeedStream rng(32);
    for (int i = 0; i < 100; ++i) {
        const Point2 x = rng.in_disk({0, 0}, 4), y = rng.in_disk({0, 0}, 4);
        const double k = oracle::punctured_spiral_length(x, y, 20000);
        const double kf = oracle::punctured_spiral_length(f.eval(x), f.eval(y), 20000);
        EXPECT_NEAR(kf, k, 1e-9 * (1 + k));
    }
}

TEST(Maps, Composition) {
    const auto inv = MapSpec::inversion();
    const auto twice = compose(inv, inv);
    EXPECT_EQ(twice.kind(), MapKind::Composition);
    EXPECT_EQ(twice.name(), "inversion o inversion");
    EXPECT_EQ(twice.parts().size(), 2u);
    const Point2 p{0.3, -1.7};
    const Point2 q = twice.eval(p);
    EXPECT_NEAR(q.x, p.x, 1e-15);
    EXPECT_NEAR(q.y, p.y, 1e-15);

    // f is applied first.
    const auto sf = compose(MapSpec::half_plane_shear(), stretch());
    EXPECT_EQ(sf.eval({1, 1}), MapSpec::half_plane_shear().eval(stretch().eval({1, 1})));
    EXPECT_EQ(compose(sf, sf).parts().size(), 4u);
    expect_round_trip(compose(sf, sf), {0.7, 0.4});

    EXPECT_THROW(compose(inv, stretch()), CompositionError);
    EXPECT_THROW(compose(MapSpec::half_plane_shear(), inv), CompositionError);
}

TEST(Maps, MembershipErrors) {
    const auto f = MapSpec::inversion();
    EXPECT_THROW(f.eval({0, 0}), MembershipError);
    EXPECT_THROW(f.invert({0, 0}), MembershipError);
    EXPECT_THROW(MapSpec::half_plane_shear().eval({1, -1}), MembershipError);
    try {
        pushforward_points(f, {{1, 0}, {0, 2}, {0, 0}, {3, 3}});
        FAIL() << "expected IndexedMembershipError";
    } catch (const IndexedMembershipError& e) {
        EXPECT_EQ(e.index(), 2u);
    }
    const auto img = pushforward_points(f, {{2, 0}, {0, 4}});
    EXPECT_EQ(img[0], (Point2{0.5, 0}));
    EXPECT_EQ(img[1], (Point2{0, 0.25}));
}

TEST(Maps, SingularAffineRejected) {
    auto h = builtin::upper_half_plane();
    EXPECT_THROW(MapSpec::affine({1, 2, 2, 4, 0, 0}, h, h), ConfigurationError);
}
