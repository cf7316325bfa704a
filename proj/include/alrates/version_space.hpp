#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "alrates/hypothesis.hpp"
#include "alrates/marginal.hpp"
#include "alrates/region.hpp"

namespace alrates {

// Surviving candidate set V within a hypothesis class. Exact parametric
// representations are kept where cheap:
//   threshold_range:  z in an interval with explicit endpoint inclusivity
//   interval_rect:    a in (a_lo, a_hi], b in [b_lo, b_hi)  (needs >=1 positive)
//   interval_ball:    all h' with disagreement mass <= r from a center interval
//   grid_subset:      bitmask over a finite grid class
// Emptiness is an explicit state, never silent.
struct VersionSpace {
    enum class Rep { threshold_range, interval_rect, interval_ball, grid_subset };

    const HypothesisClass* cls = nullptr;
    Rep rep = Rep::grid_subset;
    bool empty = false;

    // threshold_range
    double z_lo = 0.0, z_hi = 1.0;
    bool z_lo_incl = false, z_hi_incl = false;

    // interval_rect
    double a_lo = 0.0, a_hi = 0.0, b_lo = 0.0, b_hi = 0.0;

    // interval_ball (metric fixed by the marginal used to build it)
    Hypothesis center{ClassKind::threshold, {0.5}};
    double radius = 0.0;
    Marginal metric;

    // grid_subset
    std::vector<char> mask;

    std::size_t grid_count() const;
    bool contains(const Hypothesis& h) const;
    bool is_singleton() const;
};

// Full class as a version space (grid classes get a full mask; parametric
// thresholds get the open parameter domain; full parametric intervals are
// represented as a ball of radius 1).
VersionSpace full_version_space(const HypothesisClass& C, const Marginal& marginal);

// Shrink by one labeled example (1-D classes and grids).
VersionSpace with_constraint(const VersionSpace& V, double x, Label y);
VersionSpace with_constraint(const VersionSpace& V, PointView x, Label y);

// Exact probability that two classifiers disagree. Closed form for any pair
// of 1-D hypotheses under a piecewise marginal, and for halfspace pairs on
// the uniform sphere (angle / pi).
double disagreement_mass(const Hypothesis& h1, const Hypothesis& h2, const Marginal& m);

// DIS(V): points where some pair in V disagrees. Exact interval unions for
// parametric 1-D representations and 1-D grids; membership test otherwise.
Region disagreement_region(const VersionSpace& V);

// B(h,r) = {h' in C : P(h != h') <= r}; r > 1 is clamped to 1.
VersionSpace ball(const HypothesisClass& C, const Hypothesis& h, double r, const Marginal& m);

// sup over pairs in V of their disagreement mass.
double diameter(const VersionSpace& V, const Marginal& m);

// Tie-break representative: smallest parameter value (1-D) or lowest grid index.
Hypothesis representative(const VersionSpace& V);

class NoiseProblem;  // noise.hpp

// diam({h in V : er(h) - inf_V er <= eps}) under the problem's distribution.
double eps_minimal_diameter(double eps, const VersionSpace& V, const NoiseProblem& problem);

}  // namespace alrates
