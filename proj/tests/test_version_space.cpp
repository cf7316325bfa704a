#include <doctest.h>

#include <cmath>
#include <random>

#include "alrates/noise.hpp"
#include "alrates/version_space.hpp"

using namespace alrates;

namespace {
const Marginal kUni = Marginal::uniform01();
}

TEST_CASE("threshold disagreement region is the half-open parameter interval") {
    HypothesisClass C = HypothesisClass::thresholds();
    VersionSpace v = ball(C, Hypothesis::threshold(0.4), 0.1, kUni);
    Region r = disagreement_region(v);
    REQUIRE(r.kind == Region::Kind::interval_union);
    CHECK(r.pieces.size() == 1);
    CHECK(r.pieces[0].first == doctest::Approx(0.3));
    CHECK(r.pieces[0].second == doctest::Approx(0.5));
    CHECK(region_mass(r, kUni) == doctest::Approx(0.2));
}

TEST_CASE("singleton version space has an empty disagreement region") {
    HypothesisClass C = HypothesisClass::from_members({Hypothesis::threshold(0.5)}, 1);
    VersionSpace v = full_version_space(C, kUni);
    CHECK(v.is_singleton());
    CHECK(disagreement_region(v).is_empty());
    CHECK(diameter(v, kUni) == 0.0);
}

TEST_CASE("interval ball: region mass 4r in the small-radius regime") {
    HypothesisClass C = HypothesisClass::intervals();
    VersionSpace v = ball(C, Hypothesis::interval(0.4, 0.6), 0.05, kUni);
    CHECK(region_mass(disagreement_region(v), kUni) == doctest::Approx(0.2));
}

TEST_CASE("interval ball with r above the width contains every narrow interval") {
    HypothesisClass C = HypothesisClass::intervals();
    VersionSpace v = ball(C, Hypothesis::interval(0.4, 0.6), 0.3, kUni);
    // every interval of width <= r - (b-a) = 0.1 is a member
    CHECK(v.contains(Hypothesis::interval(0.05, 0.14)));
    CHECK(v.contains(Hypothesis::interval(0.85, 0.95)));
    CHECK(v.contains(Hypothesis::interval(0.30, 0.40)));
    CHECK(!v.contains(Hypothesis::interval(0.05, 0.45)));  // symdiff 0.6 > r
    CHECK(region_mass(disagreement_region(v), kUni) == doctest::Approx(1.0));
}

TEST_CASE("threshold ball under uniform and the zero-radius ball") {
    HypothesisClass C = HypothesisClass::thresholds();
    VersionSpace v = ball(C, Hypothesis::threshold(0.5), 0.1, kUni);
    CHECK(v.z_lo == doctest::Approx(0.4));
    CHECK(v.z_hi == doctest::Approx(0.6));
    VersionSpace v0 = ball(C, Hypothesis::threshold(0.5), 0.0, kUni);
    CHECK(v0.contains(Hypothesis::threshold(0.5)));
    CHECK(diameter(v0, kUni) == doctest::Approx(0.0));
    // r > 1 clamps
    VersionSpace v1 = ball(C, Hypothesis::threshold(0.5), 3.0, kUni);
    CHECK(diameter(v1, kUni) == doctest::Approx(1.0));
}

TEST_CASE("diameter of a threshold range and a singleton") {
    HypothesisClass C = HypothesisClass::thresholds();
    VersionSpace v = full_version_space(C, kUni);
    v.z_lo = 0.3;
    v.z_hi = 0.5;
    CHECK(diameter(v, kUni) == doctest::Approx(0.2));
    v.z_hi = 0.3;
    v.z_lo_incl = v.z_hi_incl = true;
    CHECK(diameter(v, kUni) == doctest::Approx(0.0));
}

TEST_CASE("constraints shrink the version space monotonically") {
    HypothesisClass C = HypothesisClass::threshold_grid(512);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        VersionSpace v = full_version_space(C, kUni);
        double prev_diam = diameter(v, kUni);
        Region prev_dis = disagreement_region(v);
        double prev_mass = region_mass(prev_dis, kUni);
        for (int k = 0; k < 12; ++k) {
            double x = std::uniform_real_distribution<>(0, 1)(rng);
            Label y = predict1(Hypothesis::threshold(0.37), x);
            VersionSpace w = with_constraint(v, x, y);
            REQUIRE(!w.empty);
            double d = diameter(w, kUni);
            double m = region_mass(disagreement_region(w), kUni);
            CHECK(d <= prev_diam + 1e-12);
            CHECK(m <= prev_mass + 1e-12);
            v = w;
            prev_diam = d;
            prev_mass = m;
        }
    }
}

TEST_CASE("ball nesting: r <= r' implies containment") {
    HypothesisClass C = HypothesisClass::interval_grid(40);
    Hypothesis h = Hypothesis::interval(10.0 / 41, 25.0 / 41);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 10; ++t) {
        double r1 = std::uniform_real_distribution<>(0, 0.5)(rng);
        double r2 = r1 + std::uniform_real_distribution<>(0, 0.5)(rng);
        VersionSpace b1 = ball(C, h, r1, kUni);
        VersionSpace b2 = ball(C, h, r2, kUni);
        for (std::size_t i = 0; i < b1.mask.size(); ++i)
            if (b1.mask[i]) CHECK(b2.mask[i]);
    }
}

TEST_CASE("threshold DIS mass of a ball is min(2r,1) away from the boundary") {
    HypothesisClass C = HypothesisClass::thresholds();
    for (double r : {0.01, 0.05, 0.2, 0.45}) {
        VersionSpace v = ball(C, Hypothesis::threshold(0.5), r, kUni);
        CHECK(region_mass(disagreement_region(v), kUni) ==
              doctest::Approx(std::min(2.0 * r, 1.0)));
    }
}

TEST_CASE("grid DIS mass matches the exact DIS mass within twice the spacing") {
    std::size_t n = 10000;
    HypothesisClass G = HypothesisClass::threshold_grid(n);
    HypothesisClass C = HypothesisClass::thresholds();
    double spacing = 1.0 / (n + 1);
    for (double r : {0.03, 0.11, 0.27}) {
        VersionSpace vg = ball(G, Hypothesis::threshold(0.5), r, kUni);
        VersionSpace vc = ball(C, Hypothesis::threshold(0.5), r, kUni);
        double mg = region_mass(disagreement_region(vg), kUni);
        double mc = region_mass(disagreement_region(vc), kUni);
        CHECK(std::fabs(mg - mc) <= 2.0 * spacing);
    }
}

TEST_CASE("degenerate marginal pieces are allowed") {
    Marginal m = Marginal::piecewise({0.0, 0.25, 0.75, 1.0}, {0.5, 0.0, 0.5});
    CHECK(m.interval_mass(0.25, 0.75) == doctest::Approx(0.0));
    CHECK(m.interval_mass(0.0, 1.0) == doctest::Approx(1.0));
    HypothesisClass C = HypothesisClass::thresholds();
    VersionSpace v = ball(C, Hypothesis::threshold(0.2), 0.1, m);
    CHECK(region_mass(disagreement_region(v), m) == doctest::Approx(0.2));
}

TEST_CASE("eps-minimal diameter: brute-force grid oracle agreement") {
    NoiseProblem p = make_bounded_threshold(0.25, 0.5);
    HypothesisClass C = HypothesisClass::thresholds();
    VersionSpace full = full_version_space(C, kUni);
    double eps = 0.05;
    double got = eps_minimal_diameter(eps, full, p);
    // brute force over a dense grid with the exact true error
    const int n = 100000;
    double nu = 1.0, lo = 1.0, hi = 0.0;
    std::vector<double> ers(n);
    for (int i = 0; i < n; ++i) {
        double z = (i + 0.5) / n;
        ers[i] = p.true_error(Hypothesis::threshold(z));
        nu = std::min(nu, ers[i]);
    }
    for (int i = 0; i < n; ++i) {
        if (ers[i] - nu <= eps) {
            double z = (i + 0.5) / n;
            lo = std::min(lo, z);
            hi = std::max(hi, z);
        }
    }
    CHECK(got == doctest::Approx(hi - lo).epsilon(1e-3));
    CHECK(got == doctest::Approx(0.2).epsilon(1e-3));  // |z-z*| <= eps/(2c) = 0.1 both sides
    CHECK(eps_minimal_diameter(0.0, full, p) == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("region piece cap signals representation bugs") {
    std::vector<std::pair<double, double>> many;
    for (int i = 0; i < 40; ++i) many.emplace_back(i / 100.0, i / 100.0 + 0.003);
    CHECK_THROWS_AS(Region::from_pieces(many), std::invalid_argument);
}
