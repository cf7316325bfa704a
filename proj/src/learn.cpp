#include "alrates/learn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace alrates {

namespace {

double step_above(double x) { return std::nextafter(x, 2.0); }

LearnResult pack(Hypothesis h, std::uint64_t mist, std::size_t l_size, std::size_t q_size) {
    LearnResult r;
    r.found = true;
    r.h = std::move(h);
    r.q_mistakes = mist;
    std::size_t tot = l_size + q_size;
    r.er_lq = tot ? static_cast<double>(mist) / static_cast<double>(tot) : 0.0;
    return r;
}

LearnResult learn_grid(const HypothesisClass& C, std::span<const IndexedLabel> L,
                       std::span<const IndexedLabel> Q, LabeledStream& stream) {
    LearnResult best;
    std::uint64_t best_mist = 0;
    for (std::size_t gi = 0; gi < C.members.size(); ++gi) {
        const Hypothesis& h = C.members[gi];
        bool consistent = true;
        for (const auto& [i, y] : L) {
            if (predict(h, stream.x(i)) != y) {
                consistent = false;
                break;
            }
        }
        if (!consistent) continue;
        std::uint64_t mist = 0;
        for (const auto& [i, y] : Q)
            if (predict(h, stream.x(i)) != y) ++mist;
        if (!best.found || mist < best_mist) {
            best = pack(h, mist, L.size(), Q.size());
            best_mist = mist;
        }
    }
    return best;
}

}  // namespace

GapScan best_interval_run(const CellKernel& q, std::span<const double> cuts) {
    GapScan out;
    int gain = 0, run_start = 0;
    double boundary = 0.0;  // lower bound for `a` of the current run
    std::size_t ci = 0;
    int best_first = -1, best_last = -1;
    double best_boundary = 0.0;
    for (int j = 0; j < q.k; ++j) {
        double x = q.xs[j];
        bool skip_point = false;
        while (ci < cuts.size() && cuts[ci] <= x) {
            gain = 0;
            run_start = j;
            boundary = cuts[ci];
            if (cuts[ci] == x) skip_point = true;
            ++ci;
        }
        if (skip_point) {
            gain = 0;
            run_start = j + 1;
            continue;
        }
        if (gain == 0) {
            run_start = j;
            if (j > 0) boundary = std::max(boundary, q.xs[j - 1]);
        }
        gain += (q.plus[j + 1] - q.plus[j]) ? +1 : -1;
        if (gain > out.best_gain) {
            out.best_gain = gain;
            best_first = run_start;
            best_last = j;
            best_boundary = boundary;
        }
        if (gain < 0) {
            gain = 0;
            run_start = j + 1;
        }
    }
    if (best_first >= 0) {
        double lo = best_boundary;
        if (best_first > 0) lo = std::max(lo, q.xs[best_first - 1]);
        out.rep_a = step_above(lo);
        out.rep_b = q.xs[best_last];
        out.rep_valid = out.rep_a < out.rep_b || (out.rep_a <= q.xs[best_first]);
        if (out.rep_a >= out.rep_b) out.rep_b = step_above(out.rep_a);
    }
    return out;
}

LearnResult learn_constrained(const HypothesisClass& C, std::span<const IndexedLabel> L,
                              std::span<const IndexedLabel> Q, LabeledStream& stream) {
    if (C.is_grid()) return learn_grid(C, L, Q, stream);

    if (C.kind == ClassKind::threshold) {
        ThresholdConstraint con;
        for (const auto& [i, y] : L) con.add(stream.x1(i), y);
        if (!con.feasible) return LearnResult{};
        CellKernel q;
        q.build(Q, stream);
        int lo = q.first_cell(con.z_lo), hi = q.last_cell(con.z_hi);
        auto [mist, cell] = q.scan_min(lo, hi, [&](int j) { return q.thr_err(j); });
        double base = cell > 0 ? std::max(con.z_lo, q.xs[cell - 1]) : con.z_lo;
        return pack(Hypothesis::threshold(step_above(base)), mist, L.size(), Q.size());
    }

    if (C.kind == ClassKind::interval) {
        IntervalConstraint con;
        for (const auto& [i, y] : L) con.add(stream.x1(i), y);
        if (!con.feasible) return LearnResult{};
        CellKernel q;
        q.build(Q, stream);
        if (con.has_pos) {
            int aLo = q.first_cell(con.neg_left), aHi = q.last_cell(con.min_pos);
            int bLo = q.first_cell(con.max_pos), bHi = q.last_cell(con.neg_right);
            auto [mL, cA] = q.scan_min(aLo, aHi, [&](int j) { return q.eL(j); });
            auto [mR, cB] = q.scan_min(bLo, bHi, [&](int j) { return q.eR(j); });
            double abase = cA > 0 ? std::max(con.neg_left, q.xs[cA - 1]) : con.neg_left;
            double a = step_above(abase);
            double b = std::max(con.max_pos, cB > 0 ? q.xs[cB - 1] : 0.0);
            if (a >= b) a = std::nextafter(b, 0.0);
            return pack(Hypothesis::interval(a, b),
                        static_cast<std::uint64_t>(q.plus_tot + mL + mR), L.size(), Q.size());
        }
        GapScan run = best_interval_run(q, con.negatives);
        std::uint64_t mist = static_cast<std::uint64_t>(q.plus_tot - run.best_gain);
        if (run.best_gain > 0 && run.rep_valid)
            return pack(Hypothesis::interval(run.rep_a, run.rep_b), mist, L.size(), Q.size());
        // covering nothing is optimal: a sliver in the first open gap
        double first_point = 1.0;
        if (q.k > 0) first_point = q.xs[0];
        if (!con.negatives.empty()) first_point = std::min(first_point, con.negatives[0]);
        double a = step_above(0.0);
        double b = step_above(a);
        if (b >= first_point) {  // degenerate spacing; fall back to midpoint sliver
            a = first_point / 2.0;
            b = step_above(a);
        }
        return pack(Hypothesis::interval(a, b), static_cast<std::uint64_t>(q.plus_tot),
                    L.size(), Q.size());
    }
    throw std::invalid_argument("learn: parametric sphere class needs a grid");
}

}  // namespace alrates
