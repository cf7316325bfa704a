#include <doctest.h>

#include <cmath>
#include <random>

#include "alrates/learn.hpp"

using namespace alrates;

namespace {

LabeledStream stream_from(std::vector<double> xs, std::uint64_t budget = 1000) {
    PointBuffer b(1);
    std::vector<Label> ys(xs.size(), +1);
    for (double x : xs) b.push_back1(x);
    return LabeledStream::from_points(std::move(b), std::move(ys), budget);
}

}  // namespace

TEST_CASE("constrained fit on the three-member grid: hand evaluation") {
    HypothesisClass C = HypothesisClass::from_members(
        {Hypothesis::threshold(0.25), Hypothesis::threshold(0.5), Hypothesis::threshold(0.75)},
        1);
    LabeledStream s = stream_from({0.3, 0.6, 0.8});
    std::vector<IndexedLabel> L{{1, +1}};
    std::vector<IndexedLabel> Q{{2, -1}, {3, +1}};
    LearnResult r = learn_constrained(C, L, Q, s);
    REQUIRE(r.found);
    CHECK(r.h.z() == doctest::Approx(0.25));  // only member with h(0.3) = +1
    CHECK(r.q_mistakes == 1);
    CHECK(r.er_lq == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("unsatisfiable constraints return the empty value") {
    HypothesisClass C = HypothesisClass::thresholds();
    LabeledStream s = stream_from({0.3, 0.8});
    std::vector<IndexedLabel> L{{1, +1}, {2, -1}};  // z <= 0.3 and z > 0.8
    std::vector<IndexedLabel> Q;
    LearnResult r = learn_constrained(C, L, Q, s);
    CHECK(!r.found);
}

TEST_CASE("vacuous constraints give the tie-break representative") {
    HypothesisClass grid = HypothesisClass::from_members(
        {Hypothesis::threshold(0.2), Hypothesis::threshold(0.7)}, 1);
    LabeledStream s = stream_from({0.5});
    std::vector<IndexedLabel> none;
    LearnResult r = learn_constrained(grid, none, none, s);
    REQUIRE(r.found);
    CHECK(r.h.z() == doctest::Approx(0.2));  // lowest grid index
    CHECK(r.er_lq == 0.0);

    HypothesisClass thr = HypothesisClass::thresholds();
    LearnResult rp = learn_constrained(thr, none, none, s);
    REQUIRE(rp.found);
    CHECK(rp.h.z() > 0.0);  // smallest representable parameter above the open end
    CHECK(rp.h.z() < 1e-300);
}

TEST_CASE("parametric threshold fit picks the leftmost minimizing cell") {
    // labels (-1 at .2), (+1 at .4), (-1 at .6), (+1 at .8):
    // z in (0.2,0.4] errs once (at .6); z in (0.6,0.8] errs once (at .4);
    // leftmost minimizer wins the tie
    HypothesisClass thr = HypothesisClass::thresholds();
    LabeledStream s = stream_from({0.2, 0.4, 0.6, 0.8});
    std::vector<IndexedLabel> Q{{1, -1}, {2, +1}, {3, -1}, {4, +1}};
    LearnResult r = learn_constrained(thr, {}, Q, s);
    REQUIRE(r.found);
    CHECK(r.q_mistakes == 1);
    CHECK(r.h.z() == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(r.h.z() > 0.2);
}

TEST_CASE("interval fit with a pinned positive decomposes into two sides") {
    HypothesisClass iv = HypothesisClass::intervals();
    LabeledStream s = stream_from({0.1, 0.3, 0.5, 0.7, 0.9});
    std::vector<IndexedLabel> L{{3, +1}};  // interval must contain 0.5
    std::vector<IndexedLabel> Q{{1, -1}, {2, +1}, {4, +1}, {5, -1}};
    LearnResult r = learn_constrained(iv, L, Q, s);
    REQUIRE(r.found);
    CHECK(r.q_mistakes == 0);
    CHECK(r.h.a() > 0.1);
    CHECK(r.h.a() <= 0.3);
    CHECK(r.h.b() >= 0.7);
    CHECK(r.h.b() < 0.9);
}

TEST_CASE("interval fit with only negative constraints scans the gaps") {
    HypothesisClass iv = HypothesisClass::intervals();
    LabeledStream s = stream_from({0.2, 0.35, 0.45, 0.6, 0.8});
    std::vector<IndexedLabel> L{{1, -1}, {4, -1}};  // avoid 0.2 and 0.6
    std::vector<IndexedLabel> Q{{2, +1}, {3, +1}, {5, +1}};
    LearnResult r = learn_constrained(iv, L, Q, s);
    REQUIRE(r.found);
    // best run covers {0.35, 0.45} inside the (0.2, 0.6) gap; 0.8 is missed
    CHECK(r.q_mistakes == 1);
    CHECK(r.h.a() > 0.2);
    CHECK(r.h.a() <= 0.35);
    CHECK(r.h.b() == doctest::Approx(0.45));
}

TEST_CASE("interval fit prefers the sliver when covering nothing is optimal") {
    HypothesisClass iv = HypothesisClass::intervals();
    LabeledStream s = stream_from({0.3, 0.6});
    std::vector<IndexedLabel> Q{{1, -1}, {2, -1}};
    LearnResult r = learn_constrained(iv, {}, Q, s);
    REQUIRE(r.found);
    CHECK(r.q_mistakes == 0);
    CHECK(r.h.b() < 0.3);  // a thin interval below every point
}

TEST_CASE("constrained fit agrees with a brute-force grid scan") {
    std::mt19937_64 rng(1234);
    HypothesisClass thr = HypothesisClass::thresholds();
    HypothesisClass iv = HypothesisClass::intervals();
    for (int trial = 0; trial < 60; ++trial) {
        int npts = 3 + static_cast<int>(rng() % 40);
        std::vector<double> xs;
        for (int i = 0; i < npts; ++i) xs.push_back(std::uniform_real_distribution<>(0, 1)(rng));
        LabeledStream s = stream_from(xs);
        std::vector<IndexedLabel> L, Q;
        for (int i = 1; i <= npts; ++i) {
            IndexedLabel e{static_cast<std::uint64_t>(i), (rng() & 1) ? +1 : -1};
            if (rng() % 4 == 0)
                L.push_back(e);
            else
                Q.push_back(e);
        }
        for (const HypothesisClass* C : {&thr, &iv}) {
            LearnResult got = learn_constrained(*C, L, Q, s);
            // brute force over data-induced boundaries: midpoints between the
            // sorted coordinates cover every labeling the class can produce
            std::vector<double> bounds{1e-9, 1.0 - 1e-9};
            std::vector<double> sorted_xs = xs;
            std::sort(sorted_xs.begin(), sorted_xs.end());
            for (std::size_t i = 0; i + 1 < sorted_xs.size(); ++i)
                if (sorted_xs[i + 1] > sorted_xs[i])
                    bounds.push_back(0.5 * (sorted_xs[i] + sorted_xs[i + 1]));
            std::uint64_t best = UINT64_MAX;
            auto consider = [&](const Hypothesis& h) {
                for (auto& [i, y] : L)
                    if (predict1(h, xs[i - 1]) != y) return;
                std::uint64_t mist = 0;
                for (auto& [i, y] : Q)
                    if (predict1(h, xs[i - 1]) != y) ++mist;
                best = std::min(best, mist);
            };
            if (C->kind == ClassKind::threshold) {
                for (double z : bounds) consider(Hypothesis::threshold(z));
            } else {
                for (double a : bounds)
                    for (double b : bounds)
                        if (a < b) consider(Hypothesis::interval(a, b));
            }
            if (best == UINT64_MAX) {
                CHECK(!got.found);
            } else {
                REQUIRE(got.found);
                CHECK(got.q_mistakes == best);
                // returned hypothesis satisfies the constraints and attains the count
                for (auto& [i, y] : L) CHECK(predict1(got.h, xs[i - 1]) == y);
                std::uint64_t mist = 0;
                for (auto& [i, y] : Q)
                    if (predict1(got.h, xs[i - 1]) != y) ++mist;
                CHECK(mist == got.q_mistakes);
            }
        }
    }
}
