#pragma once
#include <span>

#include "alrates/erm_kernel.hpp"
#include "alrates/hypothesis.hpp"
#include "alrates/noise.hpp"

namespace alrates {

// Result of the constrained ERM subroutine: the empirical minimizer among
// hypotheses consistent with every pair in L. `found == false` is a value
// (no h in C satisfies the L constraints), not an error.
struct LearnResult {
    bool found = false;
    Hypothesis h{ClassKind::threshold, {0.5}};
    std::uint64_t q_mistakes = 0;
    double er_lq = 0.0;  // empirical error over L u Q (zero on L by construction)
};

// argmin_{h in C : er_L(h)=0} er_Q(h), tie-break smallest parameter value or
// lowest grid index. Reference implementation; the stream algorithms keep an
// incremental equivalent.
LearnResult learn_constrained(const HypothesisClass& C, std::span<const IndexedLabel> L,
                              std::span<const IndexedLabel> Q, LabeledStream& stream);

// Best achievable gain (covered +1 count minus covered -1 count) of a single
// interval that avoids every cut point; used for interval ERM when no
// positive constraint pins the covered core.
struct GapScan {
    int best_gain = 0;               // 0 corresponds to covering nothing
    double rep_a = 0.0, rep_b = 0.0; // representative of the best interval
    bool rep_valid = false;
};
GapScan best_interval_run(const CellKernel& q, std::span<const double> cuts);

}  // namespace alrates
