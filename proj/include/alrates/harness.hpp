#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alrates/algorithms.hpp"
#include "alrates/noise.hpp"

namespace alrates {

// Everything needed to reproduce one algorithm run bit-for-bit. Serialized
// into trace headers; replay re-executes and compares bytes.
struct TraceRecipe {
    std::string algorithm = "cal";  // cal | a2 | dhm | model_select | passive
    std::optional<NoiseProblem> problem;
    std::vector<double> points;  // explicit 1-D stream instead of a problem
    std::vector<int> labels;
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;
    std::uint64_t unlabeled_cap = 1000000;

    std::string class_kind = "threshold";  // threshold | interval | threshold_grid | members
    std::uint64_t grid_size = 4096;
    std::vector<double> member_params;  // class_kind == "members": threshold members
    std::vector<std::string> structure;  // model_select: class kinds, small to large

    double delta = 0.05;
    std::string threshold_rule = "rademacher";  // dhm: rademacher | shatter
    BoundConfig bound;
    double recompute_growth = 1.2;
    std::uint64_t exact_below = 64;
    bool trace_inferences = false;
    double g_scale = 1.0;                // a2
    std::string mass_mode = "exact";     // a2: exact | mc

    std::string to_json() const;
    static TraceRecipe from_json(const std::string& text);
};

HypothesisClass make_class(const TraceRecipe& r, std::size_t structure_pos = 0);

// Run the recipe and return the filled result (trace carries the recipe).
AlgoResult execute(const TraceRecipe& r);

// Re-run the recipe embedded in a serialized trace; empty string on an exact
// byte match, otherwise a description of the first difference.
std::string replay_trace(const std::string& trace_text);

// ---------------------------------------------------------------------------

struct ExperimentConfig {
    TraceRecipe recipe;  // budget/seed fields are overwritten per trial
    std::vector<std::uint64_t> budgets;
    std::uint64_t trials = 1;
    std::uint64_t base_seed = 1;
    std::string label;  // algorithm label for reports/CSV
    std::string output_csv;
    std::string output_report;

    std::string to_json() const;
    static ExperimentConfig from_json(const std::string& text);

    void validate() const;
};

struct TrialRecord {
    std::uint64_t budget = 0, trial = 0, seed = 0;
    bool ok = false;
    double excess_error = 0.0;
    std::uint64_t labels_used = 0, unlabeled_used = 0;
    double wall_ms = 0.0;
};

struct BudgetStat {
    std::uint64_t budget = 0;
    double median = 0.0, q25 = 0.0, q75 = 0.0;
    std::uint64_t ok_count = 0;
};

struct LearningCurve {
    std::string algorithm_label;
    std::vector<TrialRecord> records;  // keyed (budget, trial), sorted
    std::vector<BudgetStat> stats;
};

enum class ExecPolicy { serial, openmp };

// Per-(budget,trial) seeds are derived by trial_seed(base, budget, trial);
// trials are independent, so both policies produce identical curves.
LearningCurve run_experiment(const ExperimentConfig& cfg, ExecPolicy policy = ExecPolicy::openmp);

std::string curve_to_csv(const LearningCurve& c);

struct RateFit;  // rate_fit.hpp

std::string render_report(const std::vector<LearningCurve>& curves,
                          const std::vector<RateFit>& fits,
                          const std::vector<double>& predicted_slopes);

// Runs the experiment, writes CSV/report files per cfg, returns the curve.
LearningCurve run_and_emit(const ExperimentConfig& cfg, ExecPolicy policy = ExecPolicy::openmp);

}  // namespace alrates
