#include "alrates/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "alrates/erm_kernel.hpp"
#include "alrates/learn.hpp"
#include "alrates/region.hpp"
#include "alrates/rng.hpp"
#include "alrates/version_space.hpp"

namespace alrates {

namespace {

std::uint64_t effective_cap(std::uint64_t cap, const LabeledStream& stream) {
    if (stream.finite()) return std::min<std::uint64_t>(cap, stream.finite_size());
    return cap;
}

bool exact_mass_possible(const Region& r) {
    return r.kind != Region::Kind::membership;
}

}  // namespace

AlgoResult cal(const HypothesisClass& C, LabeledStream& stream, std::uint64_t n,
               std::uint64_t unlabeled_cap, const Marginal& marginal) {
    AlgoResult res;
    res.trace.algorithm = "cal";
    VersionSpace V = full_version_space(C, marginal);
    Region dis = disagreement_region(V);
    std::uint64_t limit = effective_cap(unlabeled_cap, stream);
    std::uint64_t t = 0, m = 0;
    bool done = V.is_singleton();
    while (!done && m < limit) {
        ++m;
        PointView x = stream.x(m);
        if (!dis.contains(x)) continue;
        Label y = stream.query_label(m);
        ++t;
        V = with_constraint(V, x, y);
        if (V.empty) {
            res.ok = false;
            res.failure = "version space emptied by an inconsistent label";
            res.trace.log(t, 'q', m, x[0], y, -1.0);
            break;
        }
        dis = disagreement_region(V);
        double mass = exact_mass_possible(dis) ? region_mass(dis, marginal) : -1.0;
        res.trace.log(t, 'q', m, x[0], y, mass);
        if (t == n || mass == 0.0 || V.is_singleton()) done = true;
    }
    if (!done && res.ok && m >= limit) res.trace.log(t, 'c', m);
    if (res.ok) {
        res.h = representative(V);
        res.trace.final_hypothesis = res.h.describe();
    } else {
        res.trace.failure = res.failure;
    }
    res.trace.labels_used = t;
    res.trace.unlabeled_used = m;
    return res;
}

// ---------------------------------------------------------------------------

namespace {

struct A2State {
    // threshold-range version space as a cell hull over the current Q
    VersionSpace V;
    // grid bookkeeping
    std::vector<int> gerr;

    double mass(const Region& r, const Marginal& marginal, const A2Options& opt,
                std::uint64_t salt) const {
        if (opt.mass_mode == A2Options::MassMode::exact || exact_mass_possible(r))
            return region_mass(r, marginal);
        return region_mass_mc(r, marginal, opt.mc_pool, mix64(opt.mc_seed, salt)).estimate;
    }
};

}  // namespace

AlgoResult a2(const HypothesisClass& C, LabeledStream& stream, std::uint64_t n,
              const A2Options& opt, const Marginal& marginal) {
    if (n < 1) throw std::invalid_argument("label budget must be at least 1");
    if (!(opt.delta > 0.0 && opt.delta < 0.5)) throw std::invalid_argument("delta in (0,1/2)");
    AlgoResult res;
    res.trace.algorithm = "a2";
    const bool grid = C.is_grid();
    const double dn = opt.delta / static_cast<double>(n);
    auto ub_fn = [&](double er, std::uint64_t q) {
        double g = vc_deviation(q, dn, C.vc_dim);
        return std::min(er + opt.g_scale * g, 1.0);
    };
    auto lb_fn = [&](double er, std::uint64_t q) {
        double g = vc_deviation(q, dn, C.vc_dim);
        return g == kInf ? 0.0 : std::max(er - opt.g_scale * g, 0.0);
    };

    VersionSpace V = full_version_space(C, marginal);
    std::vector<int> gerr(grid ? C.members.size() : 0, 0);
    Region R = disagreement_region(V);
    A2State st;
    double r_mass = st.mass(R, marginal, opt, 0);
    std::vector<IndexedLabel> Q;
    CellKernel k;

    std::uint64_t m = 0;
    std::uint64_t limit = effective_cap(opt.unlabeled_cap, stream);
    double tiny = n < 1024 ? std::ldexp(1.0, -static_cast<int>(n)) : 0.0;

    double best_beta = kInf;
    Hypothesis best_h = representative(V);
    bool has_best = false;
    Hypothesis last_h = best_h;
    bool has_last = false;

    auto finish = [&](Hypothesis h) {
        res.h = std::move(h);
        res.trace.final_hypothesis = res.h.describe();
        res.trace.labels_used = stream.labels_used();
        res.trace.unlabeled_used = m;
        res.Q = Q;
        return res;
    };

    for (std::uint64_t t = 1; t <= n; ++t) {
        Region dis = disagreement_region(V);
        double dis_mass = st.mass(dis, marginal, opt, t);
        if (dis_mass <= 0.5 * r_mass) {
            R = dis;
            Q.clear();
            if (grid) std::fill(gerr.begin(), gerr.end(), 0);
            r_mass = dis_mass;
            res.trace.log(t, 'r', m, r_mass);
            if (r_mass <= tiny) {
                res.trace.log(t, 'e', m, r_mass);
                return finish(has_last ? last_h : representative(V));
            }
        }
        // next stream point inside the frozen region
        while (true) {
            if (m >= limit) {
                res.trace.log(t, 'c', m);
                return finish(has_best ? best_h : representative(V));
            }
            ++m;
            if (R.contains(stream.x(m))) break;
        }
        Label y = stream.query_label(m);
        Q.push_back({m, y});
        double qd = static_cast<double>(Q.size());

        double min_er;
        if (grid) {
            for (std::size_t g = 0; g < C.members.size(); ++g)
                if (V.mask[g] && predict(C.members[g], stream.x(m)) != y) ++gerr[g];
            int best = INT32_MAX;
            std::size_t best_g = 0;
            for (std::size_t g = 0; g < C.members.size(); ++g)
                if (V.mask[g] && gerr[g] < best) {
                    best = gerr[g];
                    best_g = g;
                }
            min_er = best / qd;
            double min_ub = ub_fn(min_er, Q.size());
            bool any = false;
            for (std::size_t g = 0; g < C.members.size(); ++g) {
                if (!V.mask[g]) continue;
                if (lb_fn(gerr[g] / qd, Q.size()) > min_ub)
                    V.mask[g] = 0;
                else
                    any = true;
            }
            V.empty = !any;
            last_h = C.members[best_g];
        } else {
            k.build(Q, stream);
            int lo = k.first_cell(V.z_lo), hi = k.last_cell(V.z_hi);
            auto [minc, mincell] = k.scan_min(lo, hi, [&](int j) { return k.thr_err(j); });
            min_er = minc / qd;
            double min_ub = ub_fn(min_er, Q.size());
            int lo2 = lo, hi2 = hi;
            while (lo2 <= hi2 && lb_fn(k.thr_err(lo2) / qd, Q.size()) > min_ub) ++lo2;
            while (hi2 >= lo2 && lb_fn(k.thr_err(hi2) / qd, Q.size()) > min_ub) --hi2;
            if (lo2 > hi2) {
                V.empty = true;
            } else {
                if (lo2 > lo) {
                    V.z_lo = k.xs[lo2 - 1];
                    V.z_lo_incl = false;
                }
                if (hi2 < hi) {
                    V.z_hi = k.xs[hi2];
                    V.z_hi_incl = true;
                }
            }
            double base = mincell > 0 ? std::max(V.z_lo, k.xs[mincell - 1]) : V.z_lo;
            last_h = Hypothesis::threshold(std::nextafter(base, 2.0));
        }
        if (V.empty) {
            res.ok = false;
            res.failure = "all candidates pruned";
            res.trace.failure = res.failure;
            res.trace.labels_used = stream.labels_used();
            res.trace.unlabeled_used = m;
            return res;
        }
        has_last = true;
        double beta = (ub_fn(min_er, Q.size()) - lb_fn(min_er, Q.size())) * r_mass;
        res.trace.log(t, 't', m, dis_mass, r_mass, beta);
        if (beta < best_beta) {
            best_beta = beta;
            best_h = last_h;
            has_best = true;
        }
    }
    return finish(has_best ? best_h : representative(V));
}

// ---------------------------------------------------------------------------

namespace {

struct VirtualLearn {
    bool feasible = false;
    std::uint64_t mistakes = 0;
};

// incremental DHM state for the parametric 1-D classes
struct DhmKernelState {
    ClassKind kind;
    ThresholdConstraint tcon;
    IntervalConstraint icon;
    CellKernel qk;
    bool dirty = true;

    void rebuild(std::span<const IndexedLabel> Q, LabeledStream& stream) {
        if (!dirty) return;
        qk.build(Q, stream);
        if (kind == ClassKind::threshold)
            qk.build_thr_table();
        else
            qk.build_side_tables();
        dirty = false;
    }

    void add_constraint(double x, Label y) {
        if (kind == ClassKind::threshold)
            tcon.add(x, y);
        else
            icon.add(x, y);
    }

    bool constraints_ok() const {
        return kind == ClassKind::threshold ? tcon.feasible : icon.feasible;
    }

    VirtualLearn eval(double x, Label y) {
        VirtualLearn out;
        if (kind == ClassKind::threshold) {
            double zl = tcon.z_lo, zh = tcon.z_hi;
            if (y > 0)
                zh = std::min(zh, x);
            else
                zl = std::max(zl, x);
            if (!(zl < zh)) return out;
            out.feasible = true;
            auto [mist, cell] = qk.min_thr(qk.first_cell(zl), qk.last_cell(zh));
            (void)cell;
            out.mistakes = static_cast<std::uint64_t>(mist);
            return out;
        }
        // interval class
        double aLoV, aHiV, bLoV, bHiV;
        if (icon.has_pos) {
            if (y > 0) {
                if (x <= icon.neg_left || x >= icon.neg_right) return out;
                aLoV = icon.neg_left;
                aHiV = std::min(icon.min_pos, x);
                bLoV = std::max(icon.max_pos, x);
                bHiV = icon.neg_right;
            } else {
                if (x >= icon.min_pos && x <= icon.max_pos) return out;
                aLoV = icon.neg_left;
                aHiV = icon.min_pos;
                bLoV = icon.max_pos;
                bHiV = icon.neg_right;
                if (x < icon.min_pos)
                    aLoV = std::max(aLoV, x);
                else
                    bHiV = std::min(bHiV, x);
            }
            if (!(aLoV < aHiV && bLoV < bHiV)) return out;
            out.feasible = true;
            auto [mL, cA] = qk.min_eL(qk.first_cell(aLoV), qk.last_cell(aHiV));
            auto [mR, cB] = qk.min_eR(qk.first_cell(bLoV), qk.last_cell(bHiV));
            (void)cA;
            (void)cB;
            out.mistakes = static_cast<std::uint64_t>(qk.plus_tot + mL + mR);
            return out;
        }
        const auto& negs = icon.negatives;
        auto it = std::lower_bound(negs.begin(), negs.end(), x);
        if (it != negs.end() && *it == x) {
            // a negative constraint already sits exactly on x
            if (y > 0) return out;
        }
        if (y > 0) {
            double nl = (it == negs.begin()) ? 0.0 : *(it - 1);
            double nr = (it == negs.end()) ? 1.0 : *it;
            if (!(nl < x && x < nr)) return out;
            out.feasible = true;
            auto [mL, cA] = qk.min_eL(qk.first_cell(nl), qk.last_cell(x));
            auto [mR, cB] = qk.min_eR(qk.first_cell(x), qk.last_cell(nr));
            (void)cA;
            (void)cB;
            out.mistakes = static_cast<std::uint64_t>(qk.plus_tot + mL + mR);
            return out;
        }
        // all-negative constraint set: exact scan over the allowed gaps
        std::vector<double> cuts(negs.begin(), negs.end());
        cuts.insert(std::lower_bound(cuts.begin(), cuts.end(), x), x);
        GapScan run = best_interval_run(qk, cuts);
        out.feasible = true;
        out.mistakes = static_cast<std::uint64_t>(qk.plus_tot - run.best_gain);
        return out;
    }
};

}  // namespace

AlgoResult dhm(const HypothesisClass& C, LabeledStream& stream, std::uint64_t n,
               const DhmOptions& opt) {
    if (!(opt.delta > 0.0 && opt.delta < 0.5)) throw std::invalid_argument("delta in (0,1/2)");
    opt.bound.validate();
    AlgoResult res;
    res.trace.algorithm = "dhm";
    const bool grid = C.is_grid();
    if (!grid && C.kind == ClassKind::sphere_halfspace)
        throw std::invalid_argument("stream algorithm needs a grid for sphere classes");

    DhmKernelState ks;
    ks.kind = C.kind;
    std::vector<char> gmask(grid ? C.members.size() : 0, 1);
    std::vector<int> gerr(grid ? C.members.size() : 0, 0);

    std::vector<IndexedLabel> L, Q, S;
    RademacherDraw draw(opt.bound.rademacher_seed);
    const bool rademacher_rule = opt.threshold_kind == DhmOptions::Threshold::rademacher;
    double delta_cached = kInf;
    std::size_t next_recompute = 1;

    std::uint64_t cap = opt.unlabeled_cap;
    if (n < 60) cap = std::min(cap, std::uint64_t{1} << n);
    cap = effective_cap(cap, stream);

    auto grid_eval = [&](PointView x, Label y) {
        VirtualLearn out;
        int best = INT32_MAX;
        for (std::size_t g = 0; g < C.members.size(); ++g) {
            if (!gmask[g]) continue;
            if (predict(C.members[g], x) != y) continue;
            out.feasible = true;
            best = std::min(best, gerr[g]);
        }
        if (out.feasible) out.mistakes = static_cast<std::uint64_t>(best);
        return out;
    };

    std::uint64_t m = 0;
    for (m = 1;; ++m) {
        if (Q.size() >= n || m > cap) {
            --m;
            break;
        }
        PointView xv = stream.x(m);
        double x = xv[0];

        VirtualLearn plus, minus;
        bool need_errors = false;
        double threshold_value = kInf;

        if (grid) {
            plus = grid_eval(xv, +1);
            minus = grid_eval(xv, -1);
        } else {
            ks.rebuild(Q, stream);
            // feasibility without error counts first
            plus = ks.eval(x, +1);
            minus = ks.eval(x, -1);
        }
        if (!plus.feasible && !minus.feasible) {
            res.ok = false;
            res.failure = "constraint set unsatisfiable for both labels";
            break;
        }

        Label inferred = 0;
        double gap_logged = 0.0;
        if (!minus.feasible) {
            inferred = +1;
            gap_logged = kInf;
        } else if (!plus.feasible) {
            inferred = -1;
            gap_logged = kInf;
        } else {
            // threshold for the inference test
            if (rademacher_rule) {
                bool due = S.size() >= next_recompute || S.size() <= opt.exact_below;
                if (due && !S.empty()) {
                    delta_cached =
                        3.0 * hat_bound(S, opt.delta, L, C, stream, draw, opt.bound);
                    next_recompute = std::max<std::size_t>(
                        S.size() + 1,
                        static_cast<std::size_t>(std::ceil(S.size() * opt.recompute_growth)));
                    res.trace.log(m, 'b', S.size(), delta_cached);
                }
                threshold_value = S.empty() ? kInf : delta_cached;
                need_errors = threshold_value < 1.0;
            } else {
                double beta = dhm_beta(m - 1, opt.delta, C);
                if (beta != kInf && beta * beta < 1.0) {
                    need_errors = true;
                    threshold_value = beta;  // completed below with error terms
                }
            }
            if (need_errors) {
                std::uint64_t tot = L.size() + Q.size();
                double er_p = tot ? static_cast<double>(plus.mistakes) / tot : 0.0;
                double er_m2 = tot ? static_cast<double>(minus.mistakes) / tot : 0.0;
                if (!rademacher_rule) {
                    double beta = threshold_value;
                    threshold_value =
                        beta * beta + beta * (std::sqrt(er_p) + std::sqrt(er_m2));
                }
                double diff_plus = er_m2 - er_p;   // infer +1 when this exceeds the threshold
                double diff_minus = er_p - er_m2;  // infer -1 likewise
                bool take_plus = diff_plus > threshold_value;
                bool take_minus = diff_minus > threshold_value;
                if (take_plus && take_minus) {
                    res.trace.log(m, '!', 0, threshold_value);  // anomaly; prefer +1
                    take_minus = false;
                }
                if (take_plus) {
                    inferred = +1;
                    gap_logged = diff_plus;
                } else if (take_minus) {
                    inferred = -1;
                    gap_logged = diff_minus;
                }
            }
        }

        if (inferred != 0) {
            L.push_back({m, inferred});
            S.push_back({m, inferred});
            if (grid) {
                for (std::size_t g = 0; g < C.members.size(); ++g)
                    if (gmask[g] && predict(C.members[g], xv) != inferred) gmask[g] = 0;
            } else {
                ks.add_constraint(x, inferred);
                if (!ks.constraints_ok()) {
                    res.ok = false;
                    res.failure = "inferred labels became unsatisfiable";
                    break;
                }
            }
            if (opt.trace_inferences)
                res.trace.log(m, 'i', m, inferred, threshold_value, gap_logged);
        } else {
            Label y = stream.query_label(m);
            Q.push_back({m, y});
            S.push_back({m, y});
            if (grid) {
                for (std::size_t g = 0; g < C.members.size(); ++g)
                    if (gmask[g] && predict(C.members[g], xv) != y) ++gerr[g];
            } else {
                ks.dirty = true;
            }
            res.trace.log(m, 'q', m, x, y, threshold_value);
        }
    }

    LearnResult fin = learn_constrained(C, L, Q, stream);
    if (!fin.found) {
        res.ok = false;
        if (res.failure.empty()) res.failure = "no hypothesis consistent with the inferred labels";
    }
    if (res.ok) {
        res.h = fin.h;
        res.trace.final_hypothesis = res.h.describe();
    } else {
        res.trace.failure = res.failure;
    }
    res.L = std::move(L);
    res.Q = std::move(Q);
    res.trace.labels_used = stream.labels_used();
    res.trace.unlabeled_used = m;
    return res;
}

AlgoResult passive_erm(const HypothesisClass& C, LabeledStream& stream,
                       std::uint64_t n_labels) {
    if (n_labels < 1) throw std::invalid_argument("passive ERM needs at least one label");
    AlgoResult res;
    res.trace.algorithm = "passive";
    std::vector<IndexedLabel> D;
    D.reserve(n_labels);
    for (std::uint64_t i = 1; i <= n_labels; ++i) D.push_back({i, stream.query_label(i)});
    LearnResult r = learn_constrained(C, {}, D, stream);
    res.h = r.h;
    res.Q = std::move(D);
    res.trace.final_hypothesis = res.h.describe();
    res.trace.labels_used = n_labels;
    res.trace.unlabeled_used = n_labels;
    return res;
}

}  // namespace alrates
