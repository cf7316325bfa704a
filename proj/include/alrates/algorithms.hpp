#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "alrates/bounds.hpp"
#include "alrates/hypothesis.hpp"
#include "alrates/marginal.hpp"
#include "alrates/noise.hpp"
#include "alrates/trace.hpp"

namespace alrates {

struct AlgoResult {
    bool ok = true;
    std::string failure;  // failure-state description when !ok
    Hypothesis h{ClassKind::threshold, {0.5}};
    RunTrace trace;
    std::vector<IndexedLabel> L, Q;  // inference/query sets of the stream algorithm
};

// Realizable-case disagreement algorithm: query a point iff the surviving
// version space disagrees on it; return any member once the budget is spent
// or no disagreement remains.
AlgoResult cal(const HypothesisClass& C, LabeledStream& stream, std::uint64_t n,
               std::uint64_t unlabeled_cap, const Marginal& marginal);

struct A2Options {
    double delta = 0.05;
    double g_scale = 1.0;  // scales the VC deviation term inside UB/LB
    enum class MassMode { exact, monte_carlo } mass_mode = MassMode::exact;
    std::uint64_t mc_pool = 100000;
    std::uint64_t mc_seed = 1;
    std::uint64_t unlabeled_cap = 50000000;
};

// Agnostic region-freezing algorithm with confidence-bound pruning.
AlgoResult a2(const HypothesisClass& C, LabeledStream& stream, std::uint64_t n,
              const A2Options& opt, const Marginal& marginal);

struct DhmOptions {
    double delta = 0.05;
    enum class Threshold { shatter, rademacher } threshold_kind = Threshold::rademacher;
    BoundConfig bound;                       // rademacher threshold configuration
    std::uint64_t unlabeled_cap = 1000000;   // additionally capped by 2^n
    double recompute_growth = 1.2;           // data-size growth between bound recomputes
    std::uint64_t exact_below = 64;          // recompute each step while |L u Q| <= this
    bool trace_inferences = false;
};

// Label-inference stream algorithm: each unlabeled point is either queried or
// given an inferred label that becomes a hard constraint.
AlgoResult dhm(const HypothesisClass& C, LabeledStream& stream, std::uint64_t n,
               const DhmOptions& opt);

// ERM on the first n_labels stream labels.
AlgoResult passive_erm(const HypothesisClass& C, LabeledStream& stream, std::uint64_t n_labels);

// Nested hypothesis classes with containment verified on a probe grid
// (every labeling of the probe points by C_i is realizable in C_{i+1}).
struct NestedStructure {
    std::vector<const HypothesisClass*> classes;
    static NestedStructure verified(std::vector<const HypothesisClass*> cs,
                                    std::span<const double> probe);
};

// Model selection across the structure: run the stream algorithm per class
// from the largest index down, then keep the smallest-index candidate that
// survives the cross-class empirical comparisons.
AlgoResult model_select(const NestedStructure& st, LabeledStream& stream, std::uint64_t n,
                        const DhmOptions& opt);

}  // namespace alrates
