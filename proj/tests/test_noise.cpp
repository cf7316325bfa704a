#include <doctest.h>

#include <cmath>

#include "alrates/noise.hpp"
#include "alrates/rng.hpp"
#include "test_util.hpp"

using namespace alrates;

TEST_CASE("polynomial flavor: kappa tag and posterior shape") {
    NoiseProblem p = make_polynomial_threshold(1.0, 0.5);
    REQUIRE(p.tsybakov.has_value());
    CHECK(p.tsybakov->kappa == doctest::Approx(2.0));  // (1+alpha)/alpha
    CHECK(p.eta(0.5) == doctest::Approx(0.5));
    CHECK(p.eta(0.7) == doctest::Approx(0.6));
    CHECK(p.eta(0.3) == doctest::Approx(0.4));
    NoiseProblem p2 = make_polynomial_threshold(2.0, 0.3);
    CHECK(p2.tsybakov->kappa == doctest::Approx(1.5));
}

TEST_CASE("bounded flavor: kappa=1 and nu* = 1/2 - c") {
    NoiseProblem p = make_bounded_threshold(0.25, 0.5);
    CHECK(p.tsybakov->kappa == doctest::Approx(1.0));
    CHECK(p.nu_star() == doctest::Approx(0.25));
    CHECK(p.true_error(p.bayes()) == doctest::Approx(0.25));
}

TEST_CASE("constructor preconditions") {
    CHECK_THROWS(make_polynomial_threshold(0.0, 0.5));
    CHECK_THROWS(make_bounded_threshold(0.5, 0.5));
    CHECK_THROWS(make_bounded_threshold(0.25, 1.0));
    CHECK_THROWS(make_bounded_interval(0.25, 0.7, 0.3));
}

TEST_CASE("nu* of the alpha=2 problem against the quadrature oracle") {
    NoiseProblem p = make_polynomial_threshold(2.0, 0.3);
    double oracle = testutil::adaptive_quad(
        [&](double x) { return std::min(p.eta(x), 1.0 - p.eta(x)); }, 0.0, 1.0);
    CHECK(p.nu_star() == doctest::Approx(oracle).epsilon(1e-9));
    // closed-form antiderivative of |x-0.3|^{1/2}: (2/3)|x-0.3|^{3/2}
    double closed = 0.5 - 0.5 * (2.0 / 3.0) * (std::pow(0.3, 1.5) + std::pow(0.7, 1.5));
    CHECK(p.nu_star() == doctest::Approx(closed).epsilon(1e-12));
}

TEST_CASE("true error examples") {
    NoiseProblem noiseless = make_noiseless_threshold(0.5);
    CHECK(noiseless.true_error(Hypothesis::threshold(0.7)) == doctest::Approx(0.2));
    NoiseProblem p = make_polynomial_threshold(1.0, 0.5);
    // excess of h_{0.6} equals the integral of (2 eta - 1) over [0.5, 0.6]
    double excess = p.true_error(Hypothesis::threshold(0.6)) - p.nu_star();
    double oracle =
        testutil::adaptive_quad([&](double x) { return 2.0 * p.eta(x) - 1.0; }, 0.5, 0.6);
    CHECK(excess == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(oracle == doctest::Approx(0.005).epsilon(1e-9));  // (0.1)^2 / 2 under this eta
}

TEST_CASE("true error via quadrature for every problem kind") {
    std::vector<NoiseProblem> ps{make_noiseless_threshold(0.35),
                                 make_bounded_threshold(0.15, 0.6),
                                 make_polynomial_threshold(0.7, 0.45),
                                 make_bounded_interval(0.2, 0.3, 0.7)};
    std::vector<Hypothesis> hs{Hypothesis::threshold(0.52), Hypothesis::interval(0.25, 0.8)};
    for (const auto& p : ps) {
        for (const auto& h : hs) {
            // split at the jump points of the integrand (posterior and
            // prediction boundaries), where plain adaptive Simpson misleads
            std::vector<double> cuts{0.0, 1.0, p.z_star, p.a_star, p.b_star};
            for (double c : h.params) cuts.push_back(c);
            std::sort(cuts.begin(), cuts.end());
            double oracle = 0.0;
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                if (cuts[i + 1] <= cuts[i] || cuts[i] < 0.0 || cuts[i + 1] > 1.0) continue;
                oracle += testutil::adaptive_quad(
                    [&](double x) {
                        double e = p.eta(x);
                        return predict1(h, x) > 0 ? 1.0 - e : e;
                    },
                    cuts[i], cuts[i + 1], 1e-13);
            }
            CHECK(p.true_error(h) == doctest::Approx(oracle).epsilon(1e-8));
        }
    }
}

TEST_CASE("class noise rate: dense grid agrees with the stored value within 1e-4") {
    std::vector<NoiseProblem> ps{make_bounded_threshold(0.25, 0.5),
                                 make_polynomial_threshold(1.0, 0.5),
                                 make_bounded_interval(0.25, 0.3, 0.7)};
    HypothesisClass thr = HypothesisClass::thresholds();
    for (const auto& p : ps) {
        double nu = p.class_noise_rate(thr);
        double brute = 1.0;
        for (int i = 0; i < 200000; ++i)
            brute = std::min(brute, p.true_error(Hypothesis::threshold((i + 0.5) / 200000.0)));
        CHECK(nu == doctest::Approx(brute).epsilon(1e-4));
    }
    // interval class on the interval problem attains nu*
    NoiseProblem ip = make_bounded_interval(0.25, 0.3, 0.7);
    CHECK(ip.class_noise_rate(HypothesisClass::intervals()) == doctest::Approx(ip.nu_star()));
}

TEST_CASE("Tsybakov tag honesty: certified mu dominates the dense-grid diameters") {
    NoiseProblem p = make_polynomial_threshold(1.0, 0.5);
    REQUIRE(p.tsybakov.has_value());
    double kappa = p.tsybakov->kappa, mu = p.tsybakov->mu;
    HypothesisClass thr = HypothesisClass::thresholds();
    double nu = p.class_noise_rate(thr);
    const int n = 100000;
    std::vector<double> ers(n);
    for (int i = 0; i < n; ++i)
        ers[i] = p.true_error(Hypothesis::threshold((i + 0.5) / n));
    for (int k = 1; k <= 10; ++k) {
        double eps = std::ldexp(1.0, -k);
        double lo = 1.0, hi = 0.0;
        for (int i = 0; i < n; ++i)
            if (ers[i] - nu <= eps) {
                lo = std::min(lo, (i + 0.5) / n);
                hi = std::max(hi, (i + 0.5) / n);
            }
        double diam = std::max(hi - lo, 0.0);
        CHECK(diam <= mu * std::pow(eps, 1.0 / kappa) + 1e-9);
    }
}

TEST_CASE("stream determinism and budget semantics") {
    NoiseProblem p = make_bounded_threshold(0.25, 0.5);
    LabeledStream s1(p, 42, 2);
    LabeledStream s2(p, 42, 100);
    for (std::uint64_t i = 1; i <= 50; ++i) CHECK(s1.x1(i) == s2.x1(i));

    CHECK(s1.query_label(3) == s1.query_label(3));  // repeat queries are free
    CHECK(s1.labels_used() == 1);
    s1.query_label(7);
    CHECK(s1.labels_used() == 2);
    CHECK_THROWS_AS(s1.query_label(9), BudgetExhausted);
    CHECK(s1.labels_used() == 2);
}

TEST_CASE("conditional label frequency matches eta") {
    // P(Y=+1 | X = x) = 0.75 beyond z*; empirical frequency over 10^5 draws
    NoiseProblem p = make_bounded_threshold(0.25, 0.5);
    std::uint64_t hits = 0, tot = 0;
    LabeledStream s(p, 2024, 200000);
    for (std::uint64_t i = 1; i <= 100000; ++i) {
        if (s.x1(i) >= 0.5) {
            ++tot;
            if (s.query_label(i) == +1) ++hits;
        }
    }
    double freq = static_cast<double>(hits) / tot;
    CHECK(std::fabs(freq - 0.75) < 0.01);
}

TEST_CASE("eta-label consistency per bin within 3 standard errors") {
    NoiseProblem p = make_polynomial_threshold(1.0, 0.5);
    LabeledStream s(p, 99, 200000);
    const int bins = 10;
    std::vector<double> plus(bins, 0), tot(bins, 0), eta_acc(bins, 0);
    for (std::uint64_t i = 1; i <= 100000; ++i) {
        double x = s.x1(i);
        int b = std::min(static_cast<int>(x * bins), bins - 1);
        tot[b] += 1;
        eta_acc[b] += p.eta(x);
        if (s.query_label(i) == +1) plus[b] += 1;
    }
    for (int b = 0; b < bins; ++b) {
        double phat = plus[b] / tot[b];
        double target = eta_acc[b] / tot[b];
        double se = std::sqrt(std::max(target * (1 - target), 1e-4) / tot[b]);
        CHECK(std::fabs(phat - target) <= 3.0 * se);
    }
}

TEST_CASE("problem config round trip") {
    NoiseProblem p = make_polynomial_threshold(2.0, 0.3);
    NoiseProblem q = NoiseProblem::from_config(p.to_config());
    CHECK(q.kind == p.kind);
    CHECK(q.alpha == doctest::Approx(p.alpha));
    CHECK(q.z_star == doctest::Approx(p.z_star));
    CHECK(q.true_error(Hypothesis::threshold(0.44)) ==
          doctest::Approx(p.true_error(Hypothesis::threshold(0.44))));
    NoiseProblem ip = make_bounded_interval(0.2, 0.3, 0.7);
    NoiseProblem iq = NoiseProblem::from_config(ip.to_config());
    CHECK(iq.a_star == doctest::Approx(0.3));
    CHECK(iq.c_margin == doctest::Approx(0.2));
}

TEST_CASE("threshold error sublevel hull matches bisection expectations") {
    NoiseProblem p = make_bounded_threshold(0.25, 0.5);
    // excess(z) = 0.5 |z - 0.5|; level nu + 0.05 gives |z - 0.5| <= 0.1
    SublevelHull h = threshold_error_sublevel(p, p.nu_star() + 0.05, 0.0, 1.0);
    REQUIRE(h.any);
    CHECK(h.lo == doctest::Approx(0.4).epsilon(1e-9));
    CHECK(h.hi == doctest::Approx(0.6).epsilon(1e-9));
}
