#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "alrates/algorithms.hpp"
#include "alrates/learn.hpp"

namespace alrates {

namespace {

// all labelings of the probe points realizable by C, as sign vectors
std::set<std::vector<int>> probe_labelings(const HypothesisClass& C,
                                           std::span<const double> probe) {
    std::vector<double> xs(probe.begin(), probe.end());
    std::sort(xs.begin(), xs.end());
    std::set<std::vector<int>> out;
    std::size_t k = xs.size();
    if (C.is_grid()) {
        for (const auto& h : C.members) {
            std::vector<int> lab(k);
            for (std::size_t i = 0; i < k; ++i) lab[i] = predict1(h, xs[i]);
            out.insert(std::move(lab));
        }
        return out;
    }
    if (C.kind == ClassKind::threshold) {
        for (std::size_t j = 0; j <= k; ++j) {
            std::vector<int> lab(k, -1);
            for (std::size_t i = j; i < k; ++i) lab[i] = +1;
            out.insert(std::move(lab));
        }
        return out;
    }
    if (C.kind == ClassKind::interval) {
        std::vector<int> none(k, -1);
        out.insert(none);
        for (std::size_t s = 0; s < k; ++s)
            for (std::size_t e = s; e < k; ++e) {
                std::vector<int> lab(k, -1);
                for (std::size_t i = s; i <= e; ++i) lab[i] = +1;
                out.insert(std::move(lab));
            }
        return out;
    }
    throw std::invalid_argument("probe verification supports 1-D classes and grids");
}

}  // namespace

NestedStructure NestedStructure::verified(std::vector<const HypothesisClass*> cs,
                                          std::span<const double> probe) {
    if (cs.empty()) throw std::invalid_argument("structure needs at least one class");
    for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
        auto small = probe_labelings(*cs[i], probe);
        auto large = probe_labelings(*cs[i + 1], probe);
        for (const auto& lab : small)
            if (!large.count(lab))
                throw std::invalid_argument("classes are not nested on the probe grid");
    }
    NestedStructure st;
    st.classes = std::move(cs);
    return st;
}

AlgoResult model_select(const NestedStructure& st, LabeledStream& stream, std::uint64_t n,
                        const DhmOptions& opt) {
    AlgoResult res;
    res.trace.algorithm = "model_select";
    if (n < 2) {
        res.ok = false;
        res.failure = "budget below 2";
        res.trace.failure = res.failure;
        return res;
    }
    std::size_t i0 = std::min<std::size_t>(
        st.classes.size(), static_cast<std::size_t>(std::floor(std::sqrt(n / 2.0))));
    if (i0 < 1) i0 = 1;

    // budget audit: sum of allowances stays below n
    std::uint64_t total_allow = 0;
    for (std::size_t i = 1; i <= i0; ++i)
        total_allow += n / (2 * static_cast<std::uint64_t>(i) * i);
    if (total_allow > n) throw std::logic_error("per-class allowances exceed the budget");

    struct PerClass {
        std::vector<IndexedLabel> L, Q;
        LearnResult cand;
        double bound = kInf;
        double delta_i = 0.0;
    };
    std::vector<PerClass> per(i0 + 1);
    RademacherDraw draw(opt.bound.rademacher_seed);

    Hypothesis chosen{ClassKind::threshold, {0.5}};
    bool any_chosen = false;

    for (std::size_t i = i0; i >= 1; --i) {
        PerClass& pc = per[i];
        std::uint64_t allowance = n / (2 * static_cast<std::uint64_t>(i) * i);
        pc.delta_i = opt.delta / (2.0 * static_cast<double>(i) * i);
        DhmOptions oi = opt;
        oi.delta = pc.delta_i;
        oi.threshold_kind = DhmOptions::Threshold::rademacher;
        AlgoResult sub = dhm(*st.classes[i - 1], stream, allowance, oi);
        pc.L = std::move(sub.L);
        pc.Q = std::move(sub.Q);
        res.trace.log(i, 's', i, static_cast<double>(allowance),
                      static_cast<double>(pc.L.size()), static_cast<double>(pc.Q.size()));

        // constrained fit against the union of inferred sets from classes >= i
        std::vector<IndexedLabel> l_union;
        for (std::size_t j = i; j <= i0; ++j)
            l_union.insert(l_union.end(), per[j].L.begin(), per[j].L.end());
        pc.cand = learn_constrained(*st.classes[i - 1], l_union, pc.Q, stream);

        std::vector<IndexedLabel> s_union(pc.L);
        s_union.insert(s_union.end(), pc.Q.begin(), pc.Q.end());
        pc.bound = hat_bound(s_union, pc.delta_i, pc.L, *st.classes[i - 1], stream, draw,
                             opt.bound);

        if (!pc.cand.found) {
            res.trace.log(i, 'x', i);
            if (i == 1) break;
            continue;
        }
        bool accept = true;
        for (std::size_t j = i + 1; j <= i0 && accept; ++j) {
            const PerClass& qc = per[j];
            if (!qc.cand.found) continue;  // nothing to compare against
            std::vector<IndexedLabel> sj(qc.L);
            sj.insert(sj.end(), qc.Q.begin(), qc.Q.end());
            double er_in = empirical_error_on(pc.cand.h, sj, stream);
            double er_jn = empirical_error_on(qc.cand.h, sj, stream);
            if (er_in - er_jn > 1.5 * qc.bound) accept = false;
        }
        if (accept) {
            chosen = pc.cand.h;
            any_chosen = true;
            res.trace.log(i, 'a', i);
        } else {
            res.trace.log(i, 'x', i);
        }
        if (i == 1) break;
    }

    if (!any_chosen) {
        res.ok = false;
        res.failure = "no class produced an accepted candidate";
        res.trace.failure = res.failure;
    } else {
        res.h = chosen;
        res.trace.final_hypothesis = res.h.describe();
    }
    res.trace.labels_used = stream.labels_used();
    return res;
}

}  // namespace alrates
