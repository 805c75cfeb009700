#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qhkit/constants.hpp"

using namespace qhkit;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

std::vector<double> grid(double lo, double hi, int n) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(lo + (hi - lo) * (i + 0.5) / n);
    return g;
}

}  // namespace

TEST(Constants, RingConstants) {
    const auto r = ring_constants(1, 1, 0.5);
    EXPECT_EQ(r.M, 4.0);
    EXPECT_EQ(r.alpha_ring, 3.0);
    EXPECT_EQ(r.beta, 12.0);
    EXPECT_EQ(ring_constants(2, 1, 0.5).M, 24.0);
    EXPECT_NEAR(ring_constants(1, 1, 1 - 1e-12).beta, 6.0, 1e-10);
    EXPECT_THROW(ring_constants(0.5, 1, 0.5), DomainError);
    EXPECT_THROW(ring_constants(1, 0.9, 0.5), DomainError);
    EXPECT_THROW(ring_constants(1, 1, 1.0), DomainError);
}

TEST(Constants, ChainAtUnitParameters) {
    const auto s = chain_constants(1, 0.5, 1, 1);
    EXPECT_EQ(s.M, 4.0);
    EXPECT_EQ(s.alpha_ring, 3.0);
    EXPECT_EQ(s.beta, 12.0);
    EXPECT_DOUBLE_EQ(s.t0, 1.0 / 5184.0);
    EXPECT_NEAR(s.t0, 1.92901e-4, 1e-9);
    EXPECT_EQ(s.theta(1.0 / 31104.0), 32.0);
    EXPECT_NEAR(s.k0, 2.70951, 1e-5);
    EXPECT_NEAR(s.qprime, 1.0 / 27.0, 1e-17);
    EXPECT_NEAR(s.q_lemma42, 0.026221, 1e-6);
    EXPECT_EQ(s.c0, (1 + std::sqrt(3.0)) / 2);
    EXPECT_EQ(s.k0_ceil, 3.0);
    EXPECT_TRUE(s.lemma41_applies);
    EXPECT_FALSE(chain_constants(1, 0.5, 2, 1).lemma41_applies);
}

TEST(Constants, ChainMatchesIndependentRecomputation) {
    for (double H : {1.0, 1.5, 3.0}) {
        for (double c : {1.0, 1.3, 4.0}) {
            for (double q : {0.1, 0.5, 0.9}) {
                const double cp = 1.0 + c / 2;
                const auto s = chain_constants(H, q, c, cp);
                const auto o = oracle::chain(H, q, c, cp);
                EXPECT_LE(rel(s.M, o.M), 1e-12);
                EXPECT_LE(rel(s.beta, o.beta), 1e-12);
                EXPECT_LE(rel(s.t0, o.t0), 1e-12);
                EXPECT_LE(rel(s.theta_A, o.A), 1e-12);
                EXPECT_LE(rel(s.k0, oracle::k0(c)), 1e-12);
                EXPECT_LE(rel(s.theta(o.t0 / 7), oracle::theta(o, o.t0 / 7)), 1e-12);
                // t1 = min{t0, theta^-1(1/(3c'))} / 2, with theta^-1(y) = t0 exp(-A/y).
                const long double log_t1 = std::log(0.5L) + std::log(o.t0) - o.A * 3 * cp;
                EXPECT_LE(rel(s.log_t1, log_t1), 1e-12);
                EXPECT_LE(rel(s.psi(o.t0 / 9), 3 * cp * oracle::theta(o, 2 * o.t0 / 9)), 1e-12);
            }
        }
    }
}

TEST(Constants, ThetaInverse) {
    const auto s = chain_constants(1, 0.5, 1, 1);
    for (double y : {0.5, 1.0, 32.0, 1000.0}) {
        EXPECT_LE(rel(s.theta(s.theta_inverse(y)), y), 1e-12);
    }
    EXPECT_EQ(s.theta_inverse(0.0), 0.0);
}

TEST(Constants, ThetaMonotoneAndDivergent) {
    const auto s = chain_constants(1, 0.5, 1, 1);
    EXPECT_EQ(s.theta(0.0), 0.0);
    EXPECT_LT(s.theta(1e-300), 1.0);
    double prev = 0.0;
    for (double t : grid(0.0, s.t0, 100)) {
        const double v = s.theta(t);
        EXPECT_GT(v, prev);
        prev = v;
    }
    // Approaching t0 the log denominator vanishes.
    double last = 0.0;
    for (double e : {1e-2, 1e-4, 1e-8, 1e-12}) {
        const double v = s.theta(s.t0 * (1 - e));
        EXPECT_GT(v, last);
        last = v;
    }
    EXPECT_GT(last, 1e12);
    EXPECT_THROW(s.theta(s.t0), DomainError);
    EXPECT_THROW(s.theta(-1e-9), DomainError);
}

TEST(Constants, Theta0Relative) {
    EXPECT_EQ(theta0_relative(0.0, 1), 0.0);
    EXPECT_DOUBLE_EQ(theta0_relative(1.0 / 3, 1), 2.0);
    EXPECT_DOUBLE_EQ(theta0_relative(0.5, 1), 3.0);
    for (double c : {1.0, 1.7, 5.0}) {
        const double k = 1 / (3 * c);
        const double left = 3 * c * (3 * c + 1) / (3 * c - 1) * k;
        const double right = (1 + k) / (1 - k);
        EXPECT_LE(rel(left, right), 1e-12);
        EXPECT_LE(rel(theta0_relative(k, c), right), 1e-12);
        double prev = -1.0;
        for (double t : grid(0.0, 1.0, 1000)) {
            const double v = theta0_relative(t, c);
            EXPECT_GT(v, prev);
            prev = v;
        }
    }
    EXPECT_THROW(theta0_relative(1.0, 1), DomainError);
}

TEST(Constants, EtaPrimeKnots) {
    for (double c : {1.0, 1.2, 3.0}) {
        for (double H : {1.0, 1.5, 4.0}) {
            const double knot = 2 * c / (1 + 2 * c);
            const double top = (1 + c) * std::pow(H, 1 + c);
            const double slope = (1 + 2 * c) * (top - H);
            const double icept = -2 * c * top + (1 + 2 * c) * H;
            // Left branch lands on H at the first knot; the line reaches (1+c)H^(1+c) at t = 1.
            EXPECT_LE(rel(eta_prime(knot, c, H), H), 1e-12);
            EXPECT_LE(rel(slope * knot + icept, H), 1e-12);
            EXPECT_LE(rel(eta_prime(1.0, c, H), top), 1e-12);
            EXPECT_LE(rel(eta_prime(std::nextafter(1.0, 2.0), c, H), top), 1e-12);
            EXPECT_LE(rel(eta_prime(std::nextafter(knot, 2.0), c, H), H), 1e-12);
            EXPECT_EQ(eta_prime(0.0, c, H), 0.0);
            double prev = -1.0;
            for (double t : grid(0.0, 3.0, 1000)) {
                const double v = eta_prime(t, c, H);
                EXPECT_GT(v, prev);
                prev = v;
            }
        }
    }
    EXPECT_THROW(eta_prime(-0.1, 1.0, 1.0), DomainError);
}

TEST(Constants, RelativeControlAndDerivedH) {
    const auto s = chain_constants(1, 0.5, 1, 1);
    // With phi = id, theta(2/3) = expm1(theta0(2/3)) = e^5 - 1.
    EXPECT_LE(rel(s.thetaM, std::exp(5.0) - 1), 1e-12);
    EXPECT_LE(rel(s.H_lemma41, s.k0 * std::pow(s.thetaM, s.k0)), 1e-12);
}

TEST(Constants, SemisolidExponents) {
    const auto e = semisolid_exponents(0.1, 0.1, 1, 1, 1, 1, 1);
    EXPECT_EQ(e.K1, 27.0);
    EXPECT_EQ(e.K2, 2.0);
    EXPECT_EQ(e.K, 27.0);
    EXPECT_EQ(semisolid_exponents(50, 1, 1, 1, 1, 1, 1).K, 100.0);
    EXPECT_THROW(semisolid_exponents(0.1, 0.0, 1, 1, 1, 1, 1), DomainError);
    EXPECT_THROW(semisolid_exponents(0.1, 0.1, 1, 1.5, 1, 1, 1), DomainError);

    const auto s = chain_constants(1, 0.5, 1, 1);
    const double t0s = std::min(1.0 / 3, s.q_lemma42 / 81);
    EXPECT_LE(rel(s.t0_semisolid, t0s), 1e-12);
    EXPECT_LE(rel(s.K1, 3 * 9 / s.q_lemma42), 1e-12);
    EXPECT_EQ(s.K2, 2.0);
    EXPECT_EQ(s.K, std::max(s.K1, s.K2));
}

TEST(Constants, ComposeSemisolid) {
    const auto g = [] {
        std::vector<double> out;
        for (int i = 0; i <= 100; ++i) out.push_back(i * 0.05);
        return out;
    }();
    const auto id = FunctionTable::tabulate([](double t) { return t; }, g);
    const auto idid = compose_semisolid(id, id);
    EXPECT_EQ(idid.v, id.v);

    const auto big = [] {
        std::vector<double> out;
        for (int i = 0; i <= 200; ++i) out.push_back(i * 0.1);
        return out;
    }();
    const auto p1 = FunctionTable::tabulate([](double t) { return std::sqrt(3.0) * t; }, g);
    const auto p2 = FunctionTable::tabulate([](double t) { return 2 * t; }, big);
    const auto p21 = compose_semisolid(p1, p2);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(p21.v[i], 2 * std::sqrt(3.0) * g[i], 1e-12);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_GE(p21.v[i], p1.v[i]);

    const auto mu = FunctionTable::tabulate([](double t) { return 2 * std::max(std::sqrt(t), t); }, g);
    const auto same = compose_semisolid(mu, FunctionTable::tabulate([](double t) { return t; }, big));
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(same.v[i], mu.v[i], 1e-12);

    auto bad = id;
    bad.v[5] = 10;
    EXPECT_THROW(compose_semisolid(bad, id), ValidationError);
    auto moved = id;
    moved.v[0] = 0.1;
    EXPECT_THROW(compose_semisolid(id, moved), ValidationError);
    // Outside the second table's range.
    EXPECT_THROW(compose_semisolid(p2, p1), DomainError);
}

TEST(Constants, ChainErrors) {
    EXPECT_THROW(chain_constants(0.9, 0.5, 1, 1), DomainError);
    EXPECT_THROW(chain_constants(1, 0.0, 1, 1), DomainError);
    EXPECT_THROW(chain_constants(1, 0.5, 1, 0.5), DomainError);
    ChainOptions opt;
    opt.phi = [](double t) { return 2 * t; };
    EXPECT_THROW(chain_constants(1, 0.5, 1, 1, opt), DomainError);
    opt.phi_inverse = [](double t) { return t / 2; };
    const auto s = chain_constants(1, 0.5, 1, 1, opt);
    EXPECT_LE(rel(s.thetaM, std::expm1(2 * 5.0)), 1e-12);
}
