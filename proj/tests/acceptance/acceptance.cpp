// One PASS/FAIL line per acceptance criterion. Exit status 0 only when all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>

#include "../oracles.hpp"
#include "qhkit/constants.hpp"
#include "qhkit/estimators.hpp"
#include "qhkit/repro.hpp"

using namespace qhkit;

namespace {

int failures = 0;

void verdict(const char* id, bool pass, const std::string& detail) {
    std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

void ac1() {
    const auto start = std::chrono::steady_clock::now();
    const double truth = oracle::halfplane_geodesic_length({0, 1}, {0, 2});
    auto k_at = [](double g) {
        const auto m = build_mesh(builtin::upper_half_plane(), g, MeshClip{Rect{-4, 0, 4, 4}, 0.05});
        return qh_distance(*m, {0, 1}, {0, 2}).distance;
    };
    const double e05 = rel(k_at(0.05), truth);
    const double e10 = rel(k_at(0.1), truth);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    verdict("AC1", e05 <= 0.02 && e10 <= 0.05 && secs < 30.0,
            "half-plane k((0,1),(0,2)) error " + fmt_real(e05, 4) + " at grading 0.05, " + fmt_real(e10, 4) +
                " at 0.1, " + fmt_real(secs, 3) + " s");
}

void ac2() {
    const auto m = build_mesh(builtin::punctured_plane(), 0.05, MeshClip{Rect{-10, -10, 10, 10}, 0.02, 10.0});
    SeedStream rng(20240601);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        auto draw = [&] {
            const double r = std::exp(rng.uniform(std::log(0.2), std::log(5.0)));
            const double t = rng.angle();
            return Point2{r * std::cos(t), r * std::sin(t)};
        };
        const Point2 x = draw(), y = draw();
        worst = std::max(worst, rel(qh_distance(*m, x, y).distance, oracle::punctured_spiral_length(x, y)));
    }
    verdict("AC2", worst <= 0.02, "punctured plane, 20 pairs in 0.2 <= |z| <= 5, worst error " + fmt_real(worst, 4));
}

std::string summary(const RunReport& r) {
    std::size_t fails = 0;
    for (const auto& c : r.checks) fails += c.pass ? 0 : 1;
    return std::to_string(r.checks.size()) + " checks, " + std::to_string(fails) + " failed";
}

void ac7() {
    const auto s = chain_constants(1, 0.5, 1, 1);
    bool ok = s.M == 4 && s.alpha_ring == 3 && s.beta == 12 && rel(s.t0, 1.0 / 5184) <= 1e-15;
    ok = ok && std::abs(s.k0 - 2.70951) <= 1e-5;
    ok = ok && s.theta(1.0 / 31104) == 32.0;
    double worst = 0.0;
    for (double c : {1.0, 1.5, 3.0}) {
        for (double H : {1.0, 2.0}) {
            const double knot = eta_knot(c);
            const double top = (1 + c) * std::pow(H, 1 + c);
            const auto [a, b] = eta_prime_line(c, H);
            worst = std::max(worst, rel(eta_prime(knot, c, H), a * knot + b));
            worst = std::max(worst, rel(a * 1.0 + b, top));
            worst = std::max(worst, rel(eta_prime(std::nextafter(1.0, 2.0), c, H), eta_prime(1.0, c, H)));
        }
        const double k = 1 / (3 * c);
        worst = std::max(worst, rel(3 * c * (3 * c + 1) / (3 * c - 1) * k, (1 + k) / (1 - k)));
        worst = std::max(worst, rel(theta0_relative(k, c), theta0_relative(std::nextafter(k, 1.0), c)));
    }
    ok = ok && worst <= 1e-12;
    verdict("AC7", ok,
            "M=" + fmt_real(s.M) + " alpha=" + fmt_real(s.alpha_ring) + " beta=" + fmt_real(s.beta) + " 1/t0=" +
                fmt_real(1 / s.t0) + " k0=" + fmt_real(s.k0, 8) + " theta(1/31104)=" + fmt_real(s.theta(1.0 / 31104)) +
                " knot residual " + fmt_real(worst, 3));
}

void ac9() {
    const auto f = MapSpec::identity(builtin::upper_half_plane());
    SampleSpec s;
    s.seed = 20240601;
    s.count = 200;
    s.radius_schedule = {0.1, 0.05, 0.01};
    const double qc = estimate_qc(f, s).estimate;
    const double wqs = estimate_weak_qs(f, s).estimate;
    const double lwqs = estimate_local_weak_qs(f, s).estimate;
    const auto mesh = build_mesh(f.source_ptr(), 0.1, MeshClip{Rect{-4, 0, 4, 4}, 0.05});
    s.count = 100;
    s.window = Rect{-1.5, 0.25, 1.5, 2.5};
    const double slope = estimate_semisolid(f, *mesh, *mesh, s).estimate;
    verdict("AC9", qc == 1.0 && wqs == 1.0 && lwqs == 1.0 && slope == 1.0,
            "identity: qc " + fmt_real(qc, 17) + ", wqs " + fmt_real(wqs, 17) + ", lwqs " + fmt_real(lwqs, 17) +
                ", semisolid slope " + fmt_real(slope, 17));
}

}  // namespace

int main() {
    try {
        ac1();
        ac2();

        std::map<std::string, std::pair<RunReport, RunReport>> runs;
        for (const auto& name : repro_suites()) runs.emplace(name, std::pair{run_repro(name, {}), run_repro(name, {})});
        const auto& r11 = runs.at("example-1-1").first;
        const auto& r18 = runs.at("example-1-8").first;
        const auto& r31 = runs.at("example-3-1").first;
        const auto& r34 = runs.at("lemma-3-4").first;
        const auto& r36 = runs.at("lemma-3-6").first;
        verdict("AC3", r11.all_pass() && !r11.checks.empty(), "example-1-1: " + summary(r11));
        verdict("AC4", r18.all_pass() && !r18.checks.empty(), "example-1-8: " + summary(r18));
        verdict("AC5", r31.all_pass() && !r31.checks.empty(), "example-3-1: " + summary(r31));
        verdict("AC6", r34.all_pass() && r36.all_pass() && !r34.checks.empty() && !r36.checks.empty(),
                "lemma-3-4: " + summary(r34) + "; lemma-3-6: " + summary(r36));

        ac7();

        bool same = true;
        std::string differing;
        for (const auto& [name, pair] : runs) {
            const auto& [a, b] = pair;
            if (a.text() != b.text() || a.csv() != b.csv() || a.json() != b.json() || a.svg() != b.svg()) {
                same = false;
                differing += " " + name;
            }
        }
        verdict("AC8", same,
                same ? std::to_string(runs.size()) + " repro suites byte-identical across two runs (text, csv, json, svg)"
                     : "differing:" + differing);

        ac9();
    } catch (const std::exception& e) {
        std::printf("FAIL acceptance aborted: %s\n", e.what());
        return 1;
    }
    return failures == 0 ? 0 : 1;
}
