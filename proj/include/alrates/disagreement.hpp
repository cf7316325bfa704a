#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alrates/hypothesis.hpp"
#include "alrates/marginal.hpp"

namespace alrates {

// Closed-form disagreement coefficient where known. Exact values carry
// lo == hi; the sphere case is a certified bracket.
struct ThetaBracket {
    double lo = 0.0;
    double hi = 0.0;
    bool exact() const { return lo == hi; }
};

ThetaBracket theta_analytic(const HypothesisClass& C, const Hypothesis& h, const Marginal& m);

struct ThetaEstimate {
    double value = 0.0;
    double r_at_sup = 0.0;
    double std_error = 0.0;  // stderr of the mass estimate at the maximizing r
    bool exact_mode = false;
    std::vector<double> r_grid;
    std::vector<double> masses;
    std::vector<double> mass_errors;
};

// Dyadic grid 2^-1..2^-20 intersected with (r0, 1], plus the class-critical
// radius (interval width) when the center is an interval.
std::vector<double> default_r_grid(const Hypothesis& h, double r0);

// sup over the grid of P(DIS(B(h,r)))/r. Exact masses for 1-D classes under
// a 1-D marginal; Monte Carlo with the stated budget otherwise.
ThetaEstimate theta_estimate(const HypothesisClass& C, const Hypothesis& h, const Marginal& m,
                             double r0, std::vector<double> r_grid, std::uint64_t mc_budget,
                             std::uint64_t seed, bool force_mc = false);

// One verified inequality of the coefficient calculus.
struct LemmaCheckResult {
    std::string name;
    bool pass = false;
    double lhs = 0.0, rhs = 0.0, slack = 0.0;  // pass iff lhs <= rhs + slack
    std::string detail;
};

// Property checks on constructed fixtures: close marginals (lambda = 1 and
// lambda = 1/2), finite mixtures, finite unions including the out-of-class
// +2 case. Inequalities are asserted with 3 combined standard errors.
std::vector<LemmaCheckResult> lemma_checks(std::uint64_t mc_budget, std::uint64_t seed);

}  // namespace alrates
