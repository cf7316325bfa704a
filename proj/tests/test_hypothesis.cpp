#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "alrates/hypothesis.hpp"

using namespace alrates;

TEST_CASE("threshold prediction: +1 iff x >= z") {
    Hypothesis h = Hypothesis::threshold(0.5);
    CHECK(predict1(h, 0.6) == +1);
    CHECK(predict1(h, 0.5) == +1);
    CHECK(predict1(h, 0.49) == -1);
}

TEST_CASE("interval prediction includes both endpoints") {
    Hypothesis h = Hypothesis::interval(0.4, 0.6);
    CHECK(predict1(h, 0.4) == +1);
    CHECK(predict1(h, 0.6) == +1);
    CHECK(predict1(h, 0.39) == -1);
    CHECK(predict1(h, 0.61) == -1);
}

TEST_CASE("halfspace prediction is the sign of the inner product") {
    Hypothesis h = Hypothesis::halfspace({0.0, 1.0, 0.0});
    double raw[3] = {0.3, -0.2, 0.9};
    double norm = std::sqrt(raw[0] * raw[0] + raw[1] * raw[1] + raw[2] * raw[2]);
    double x[3] = {raw[0] / norm, raw[1] / norm, raw[2] / norm};
    CHECK(predict(h, PointView(x, 3)) == -1);
}

TEST_CASE("predict rejects dimension mismatches") {
    Hypothesis h = Hypothesis::halfspace({1.0, 0.0});
    double x[3] = {1.0, 0.0, 0.0};
    CHECK_THROWS_AS(predict(h, PointView(x, 3)), std::invalid_argument);
    Hypothesis t = Hypothesis::threshold(0.5);
    CHECK_THROWS_AS(predict(t, PointView(x, 3)), std::invalid_argument);
}

TEST_CASE("hypothesis constructors validate parameters") {
    CHECK_THROWS_AS(Hypothesis::interval(0.6, 0.4), std::invalid_argument);
    CHECK_THROWS_AS(Hypothesis::interval(0.0, 0.4), std::invalid_argument);
    CHECK_THROWS_AS(Hypothesis::halfspace({1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("empirical error examples") {
    PointBuffer xs(1);
    xs.push_back1(0.7);
    xs.push_back1(0.2);
    Hypothesis h = Hypothesis::threshold(0.5);
    std::vector<IndexedLabel> s1{{1, +1}, {2, -1}};
    CHECK(empirical_error(h, s1, xs) == 0.0);
    std::vector<IndexedLabel> s2{{1, -1}};
    CHECK(empirical_error(h, s2, xs) == 1.0);
    std::vector<IndexedLabel> s0;
    CHECK(empirical_error(h, s0, xs) == 0.0);  // er on the empty set is 0
    std::vector<IndexedLabel> bad{{3, +1}};
    CHECK_THROWS_AS(empirical_error(h, bad, xs), std::out_of_range);
}

TEST_CASE("empirical error is permutation invariant and matches brute force") {
    std::mt19937_64 rng(7);
    PointBuffer xs(1);
    std::vector<IndexedLabel> s;
    for (int i = 1; i <= 50; ++i) {
        xs.push_back1(std::uniform_real_distribution<>(0, 1)(rng));
        s.push_back({static_cast<std::uint64_t>(i), rng() & 1 ? +1 : -1});
    }
    Hypothesis h = Hypothesis::interval(0.2, 0.7);
    double base = empirical_error(h, s, xs);
    std::size_t wrong = 0;
    for (auto& [i, y] : s)
        if (predict1(h, xs[i - 1][0]) != y) ++wrong;
    CHECK(base == doctest::Approx(static_cast<double>(wrong) / 50.0));
    std::shuffle(s.begin(), s.end(), rng);
    CHECK(empirical_error(h, s, xs) == base);
}

TEST_CASE("shatter coefficients: analytic counts and the VC fallback") {
    HypothesisClass thr = HypothesisClass::thresholds();
    CHECK(thr.log_shatter(10) == doctest::Approx(std::log(11.0)));
    HypothesisClass iv = HypothesisClass::intervals();
    CHECK(iv.log_shatter(10) == doctest::Approx(std::log(45.0 + 10.0 + 1.0)));
    HypothesisClass hs = HypothesisClass::sphere_halfspaces(3);
    CHECK(hs.log_shatter(30) == doctest::Approx(3.0 * std::log(std::exp(1.0) * 30.0 / 3.0)));
    // nondecreasing in m, and at most (em/d)^d for m >= d
    for (std::uint64_t m = 2; m < 200; ++m) {
        CHECK(thr.log_shatter(m) >= thr.log_shatter(m - 1));
        CHECK(iv.log_shatter(m) >= iv.log_shatter(m - 1));
        if (m >= 2)
            CHECK(iv.log_shatter(m) <= 2.0 * std::log(std::exp(1.0) * m / 2.0) + 1e-12);
    }
    // grid classes cannot exceed their member count
    HypothesisClass g = HypothesisClass::threshold_grid(8);
    CHECK(g.log_shatter(100) == doctest::Approx(std::log(8.0)));
}
