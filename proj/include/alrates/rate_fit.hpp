#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "alrates/harness.hpp"

namespace alrates {

// Least-squares fit of the per-budget medians:
//   power_law:    log(median) ~ slope * log(n) + intercept
//   exponential:  log(median) ~ slope * n + intercept
// Budgets whose median sits at or below the numerical floor are reported but
// excluded from the fit. The bootstrap resamples trials within each budget.
struct RateFit {
    enum class Model { power_law, exponential };
    Model model = Model::power_law;
    bool ok = false;
    std::string note;
    double slope = 0.0, intercept = 0.0, r2 = 0.0;
    double boot_lo = 0.0, boot_hi = 0.0;
    std::vector<std::uint64_t> budgets_used;
};

inline constexpr double kExcessFloor = 1e-7;

RateFit fit_rate(const LearningCurve& curve, RateFit::Model model, int bootstrap_rounds = 200,
                 std::uint64_t bootstrap_seed = 7);

}  // namespace alrates
