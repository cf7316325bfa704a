#include "alrates/bounds.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <stdexcept>

#include "alrates/erm_kernel.hpp"
#include "alrates/learn.hpp"
#include "alrates/rng.hpp"
#include "alrates/version_space.hpp"

namespace alrates {

void BoundConfig::validate() const {
    if (!(k_hat > 0.0 && k_tilde > 0.0)) throw std::invalid_argument("bound constants must be positive");
    if (!(c_hat > 1.0 && c_tilde > 1.0)) throw std::invalid_argument("scale constants must exceed 1");
    if (!(j_min < 0)) throw std::invalid_argument("dyadic floor must be below 1");
    if (!(prefix_shrink > 1.0)) throw std::invalid_argument("prefix shrink must exceed 1");
    if (tilde_outer < 1) throw std::invalid_argument("tilde_outer must be at least 1");
}

double vc_deviation(std::uint64_t m, double delta_prime, int d) {
    if (!(delta_prime > 0.0 && delta_prime < 1.0)) throw std::invalid_argument("delta' in (0,1)");
    if (d < 1) throw std::invalid_argument("VC dimension must be >= 1");
    if (m < static_cast<std::uint64_t>(d)) return kInf;
    double md = static_cast<double>(m);
    return 1.0 / md +
           std::sqrt((std::log(4.0 / delta_prime) + d * std::log(2.0 * std::exp(1.0) * md / d)) / md);
}

double err_upper_bound(double emp_err, std::uint64_t m, double delta_prime, int d) {
    return std::min(emp_err + vc_deviation(m, delta_prime, d), 1.0);
}

double err_lower_bound(double emp_err, std::uint64_t m, double delta_prime, int d) {
    double g = vc_deviation(m, delta_prime, d);
    return g == kInf ? 0.0 : std::max(emp_err - g, 0.0);
}

double s_m(std::uint64_t m, double delta) {
    if (m < 1) throw std::invalid_argument("s_m needs m >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta in (0,1)");
    double md = static_cast<double>(m);
    return std::log(20.0 * md * md * std::log2(3.0 * md) / delta);
}

RademacherDraw RademacherDraw::from_signs(std::vector<int> signs) {
    RademacherDraw d(0);
    d.signs_ = std::move(signs);
    return d;
}

int RademacherDraw::sign(std::uint64_t index) const {
    if (!signs_.empty()) {
        if (index == 0 || index > signs_.size())
            throw std::out_of_range("pinned Rademacher draw has no sign for this index");
        return signs_[index - 1] >= 0 ? +1 : -1;
    }
    return (mix64(seed_, index) >> 63) ? +1 : -1;
}

double rademacher_process(const std::function<double(PointView)>& f,
                          std::span<const IndexedLabel> S, const RademacherDraw& draw,
                          LabeledStream& stream) {
    if (S.empty()) throw std::invalid_argument("Rademacher process over an empty set");
    double acc = 0.0;
    for (const auto& [i, y] : S) acc += draw.sign(i) * f(stream.x(i));
    return acc / static_cast<double>(S.size());
}

double rademacher_process(const Hypothesis& h1, const Hypothesis& h2,
                          std::span<const IndexedLabel> S, const RademacherDraw& draw,
                          LabeledStream& stream) {
    return rademacher_process(
        [&](PointView x) {
            return static_cast<double>(predict(h1, x)) - static_cast<double>(predict(h2, x));
        },
        S, draw, stream);
}

double dhm_beta(std::uint64_t m, double delta, const HypothesisClass& C) {
    if (m == 0) return kInf;
    double md = static_cast<double>(m);
    double logarg = std::log(8.0) + std::log(md) + std::log(md + 1.0) +
                    2.0 * C.log_shatter(2 * m) - std::log(delta);
    return std::sqrt(4.0 * logarg / md);
}

double dhm_threshold_shatter(std::uint64_t m, double delta, const HypothesisClass& C,
                             double er_hy, double er_hmy) {
    double beta = dhm_beta(m, delta, C);
    if (beta == kInf) return kInf;
    return beta * beta + beta * (std::sqrt(er_hy) + std::sqrt(er_hmy));
}

// ---------------------------------------------------------------------------
// Exact sup machinery over empirical sublevel sets.
// ---------------------------------------------------------------------------

namespace {

struct EvalOut {
    double d_hat = 0.0;
    double phi_hat = 0.0;
    int min_err = 0;
};

// one boundary family of an interval/threshold evaluation: cells restricted
// to [lo..hi], sorted by slack with prefix extrema of +/-pos and +/-xi
struct Side {
    std::vector<int> slack;  // distinct, ascending
    std::vector<int> mx_pos, mn_pos, mx_xi, mn_xi;
    int min_value = 0;  // min of the side's error contribution over [lo..hi]

    int upto(int budget) const {
        auto it = std::upper_bound(slack.begin(), slack.end(), budget);
        return static_cast<int>(it - slack.begin()) - 1;
    }
};

Side build_side(const CellKernel& q, int lo, int hi, bool left_side) {
    Side s;
    std::vector<std::pair<int, int>> cells;  // (value, j)
    cells.reserve(hi - lo + 1);
    for (int j = lo; j <= hi; ++j)
        cells.emplace_back(left_side ? q.eL(j) : q.eR(j), j);
    std::sort(cells.begin(), cells.end());
    s.min_value = cells.front().first;
    for (auto& [v, j] : cells) {
        int sl = v - s.min_value;
        if (s.slack.empty() || s.slack.back() != sl) {
            s.slack.push_back(sl);
            s.mx_pos.push_back(j);
            s.mn_pos.push_back(j);
            s.mx_xi.push_back(q.xisum[j]);
            s.mn_xi.push_back(q.xisum[j]);
        } else {
            s.mx_pos.back() = std::max(s.mx_pos.back(), j);
            s.mn_pos.back() = std::min(s.mn_pos.back(), j);
            s.mx_xi.back() = std::max(s.mx_xi.back(), q.xisum[j]);
            s.mn_xi.back() = std::min(s.mn_xi.back(), q.xisum[j]);
        }
    }
    for (std::size_t t = 1; t < s.slack.size(); ++t) {
        s.mx_pos[t] = std::max(s.mx_pos[t], s.mx_pos[t - 1]);
        s.mn_pos[t] = std::min(s.mn_pos[t], s.mn_pos[t - 1]);
        s.mx_xi[t] = std::max(s.mx_xi[t], s.mx_xi[t - 1]);
        s.mn_xi[t] = std::min(s.mn_xi[t], s.mn_xi[t - 1]);
    }
    return s;
}

enum class Sel { pos_max, pos_min, xi_max, xi_min };

inline int side_best(const Side& s, Sel sel, int t) {
    switch (sel) {
        case Sel::pos_max: return s.mx_pos[t];
        case Sel::pos_min: return -s.mn_pos[t];
        case Sel::xi_max: return s.mx_xi[t];
        case Sel::xi_min: return -s.mn_xi[t];
    }
    return 0;
}

// max over one hypothesis (jA, jB) with slackA + slackB <= budget of
// selA(jA) + selB(jB); INT_MIN when infeasible
int pair_max(const Side& A, const Side& B, Sel selA, Sel selB, long budget) {
    if (budget < 0) return INT_MIN;
    int best = INT_MIN;
    for (std::size_t t = 0; t < A.slack.size() && A.slack[t] <= budget; ++t) {
        long rem = budget - A.slack[t];
        int tb = B.upto(static_cast<int>(std::min<long>(rem, INT_MAX)));
        if (tb >= 0)
            best = std::max(best, side_best(A, selA, static_cast<int>(t)) + side_best(B, selB, tb));
    }
    return best;
}

// Evaluation context for one (C, L, S) triple. Exact for thresholds; exact
// for intervals once L pins a positive point (the relaxation without a
// positive is a conservative superset, documented).
struct HatEval {
    bool grid = false;
    bool two_sided = false;
    bool cl_empty = false;
    int n_points = 0;
    CellKernel q;
    // threshold family
    int cell_lo = 0, cell_hi = 0;
    // interval family
    Side left, right;
    int real_min = 0;   // exact min error count over C[L]
    int relax_min = 0;  // min over the separable relaxation
    // grid family
    std::vector<std::vector<char>> wrong;  // per member: mistake indicator per point
    std::vector<int> errs;
    std::vector<int> wsum;  // per member: sum of xi * prediction
    std::vector<char> feasible;

    EvalOut eval(double eps) const;
};

HatEval build_eval(std::span<const IndexedLabel> L, std::span<const IndexedLabel> S,
                   const HypothesisClass& C, LabeledStream& stream,
                   const RademacherDraw& draw) {
    HatEval ev;
    ev.n_points = static_cast<int>(S.size());
    if (C.is_grid()) {
        ev.grid = true;
        std::size_t G = C.members.size();
        ev.wrong.resize(G);
        ev.errs.assign(G, 0);
        ev.wsum.assign(G, 0);
        ev.feasible.assign(G, 1);
        bool any = false;
        for (std::size_t g = 0; g < G; ++g) {
            const Hypothesis& h = C.members[g];
            for (const auto& [i, y] : L)
                if (predict(h, stream.x(i)) != y) {
                    ev.feasible[g] = 0;
                    break;
                }
            if (!ev.feasible[g]) continue;
            any = true;
            ev.wrong[g].resize(S.size());
            for (std::size_t t = 0; t < S.size(); ++t) {
                Label p = predict(h, stream.x(S[t].index));
                ev.wrong[g][t] = (p != S[t].y);
                ev.errs[g] += ev.wrong[g][t];
                ev.wsum[g] += draw.sign(S[t].index) * p;
            }
        }
        ev.cl_empty = !any;
        return ev;
    }
    if (C.kind == ClassKind::threshold) {
        ThresholdConstraint con;
        for (const auto& [i, y] : L) con.add(stream.x1(i), y);
        if (!con.feasible) {
            ev.cl_empty = true;
            return ev;
        }
        ev.q.build(S, stream, &draw);
        ev.cell_lo = ev.q.first_cell(con.z_lo);
        ev.cell_hi = ev.q.last_cell(con.z_hi);
        ev.real_min = ev.q.scan_min(ev.cell_lo, ev.cell_hi, [&](int j) { return ev.q.thr_err(j); })
                          .first;
        return ev;
    }
    if (C.kind == ClassKind::interval) {
        ev.two_sided = true;
        IntervalConstraint con;
        for (const auto& [i, y] : L) con.add(stream.x1(i), y);
        if (!con.feasible) {
            ev.cl_empty = true;
            return ev;
        }
        ev.q.build(S, stream, &draw);
        int aLo = 0, aHi = ev.q.k, bLo = 0, bHi = ev.q.k;
        if (con.has_pos) {
            aLo = ev.q.first_cell(con.neg_left);
            aHi = ev.q.last_cell(con.min_pos);
            bLo = ev.q.first_cell(con.max_pos);
            bHi = ev.q.last_cell(con.neg_right);
        }
        ev.left = build_side(ev.q, aLo, aHi, true);
        ev.right = build_side(ev.q, bLo, bHi, false);
        ev.relax_min = ev.q.plus_tot + ev.left.min_value + ev.right.min_value;
        if (con.has_pos) {
            ev.real_min = ev.relax_min;
        } else {
            GapScan run = best_interval_run(ev.q, con.negatives);
            ev.real_min = ev.q.plus_tot - run.best_gain;
        }
        return ev;
    }
    throw std::invalid_argument("localized bound: unsupported hypothesis class");
}

EvalOut HatEval::eval(double eps) const {
    EvalOut out;
    if (cl_empty) throw std::invalid_argument("no hypothesis is consistent with L");
    if (n_points == 0) return out;
    double nd = static_cast<double>(n_points);
    if (grid) {
        int min_err = INT_MAX;
        for (std::size_t g = 0; g < errs.size(); ++g)
            if (feasible[g]) min_err = std::min(min_err, errs[g]);
        int cap = min_err + static_cast<int>(std::floor(eps * nd + 1e-9));
        std::vector<std::size_t> in;
        int wmax = INT_MIN, wmin = INT_MAX;
        for (std::size_t g = 0; g < errs.size(); ++g) {
            if (!feasible[g] || errs[g] > cap) continue;
            in.push_back(g);
            wmax = std::max(wmax, wsum[g]);
            wmin = std::min(wmin, wsum[g]);
        }
        out.min_err = min_err;
        out.phi_hat = (wmax - wmin) / (2.0 * nd);
        int dmax = 0;
        for (std::size_t u = 0; u < in.size(); ++u)
            for (std::size_t v = u + 1; v < in.size(); ++v) {
                int d = 0;
                const auto& wu = wrong[in[u]];
                const auto& wv = wrong[in[v]];
                for (int t = 0; t < n_points; ++t) d += (wu[t] != wv[t]);
                dmax = std::max(dmax, d);
            }
        out.d_hat = dmax / nd;
        return out;
    }
    int cap = real_min + static_cast<int>(std::floor(eps * nd + 1e-9));
    out.min_err = real_min;
    if (!two_sided) {
        int pmax = INT_MIN, pmin = INT_MAX, xmax = INT_MIN, xmin = INT_MAX;
        for (int j = cell_lo; j <= cell_hi; ++j) {
            if (q.thr_err(j) > cap) continue;
            pmax = std::max(pmax, j);
            pmin = std::min(pmin, j);
            xmax = std::max(xmax, q.xisum[j]);
            xmin = std::min(xmin, q.xisum[j]);
        }
        out.d_hat = (pmax - pmin) / nd;
        out.phi_hat = (xmax - xmin) / nd;
        return out;
    }
    long budget = cap - relax_min;
    int e1 = pair_max(left, right, Sel::pos_max, Sel::pos_max, budget) +
             pair_max(left, right, Sel::pos_min, Sel::pos_min, budget);
    int e2 = pair_max(left, right, Sel::pos_max, Sel::pos_min, budget) +
             pair_max(left, right, Sel::pos_min, Sel::pos_max, budget);
    out.d_hat = std::max(e1, e2) / nd;
    int gmax = pair_max(left, right, Sel::xi_min, Sel::xi_max, budget);
    int gmin = -pair_max(left, right, Sel::xi_max, Sel::xi_min, budget);
    out.phi_hat = (gmax - gmin) / nd;
    return out;
}

}  // namespace

HatSup hat_sup(double eps, std::span<const IndexedLabel> L, std::span<const IndexedLabel> S,
               const HypothesisClass& C, LabeledStream& stream, const RademacherDraw& draw) {
    HatEval ev = build_eval(L, S, C, stream, draw);
    EvalOut o = ev.eval(eps);
    HatSup r;
    r.d_hat = o.d_hat;
    r.phi_hat = o.phi_hat;
    r.min_err = S.empty() ? 0.0 : o.min_err / static_cast<double>(S.size());
    return r;
}

double hat_U(double eps, double delta, std::span<const IndexedLabel> L,
             std::span<const IndexedLabel> S, const HypothesisClass& C, LabeledStream& stream,
             const RademacherDraw& draw, const BoundConfig& cfg) {
    if (S.empty()) return kInf;
    HatSup sup = hat_sup(cfg.c_hat * eps, L, S, C, stream, draw);
    double sm = s_m(S.size(), delta);
    double md = static_cast<double>(S.size());
    return cfg.k_hat * (sup.phi_hat + std::sqrt(sm * sup.d_hat / md) + sm / md);
}

HatBoundInfo hat_bound_info(std::span<const IndexedLabel> S, double delta,
                            std::span<const IndexedLabel> L, const HypothesisClass& C,
                            LabeledStream& stream, const RademacherDraw& draw,
                            const BoundConfig& cfg) {
    HatBoundInfo info;
    if (S.empty()) return info;  // +inf by convention

    // prefixes of (L,S) by stream index, on the geometric size grid
    std::vector<IndexedLabel> s_sorted(S.begin(), S.end());
    std::sort(s_sorted.begin(), s_sorted.end(),
              [](const IndexedLabel& a, const IndexedLabel& b) { return a.index < b.index; });
    std::vector<IndexedLabel> l_sorted(L.begin(), L.end());
    std::sort(l_sorted.begin(), l_sorted.end(),
              [](const IndexedLabel& a, const IndexedLabel& b) { return a.index < b.index; });

    std::vector<std::size_t> sizes;
    std::size_t sz = s_sorted.size();
    while (true) {
        sizes.push_back(sz);
        if (sz == 1) break;
        std::size_t nxt = static_cast<std::size_t>(
            std::ceil(static_cast<double>(sz) / cfg.prefix_shrink));
        if (nxt >= sz) nxt = sz - 1;
        sz = nxt;
    }

    struct Prefix {
        HatEval ev;
        std::size_t size;
        double sm;
    };
    std::vector<Prefix> prefixes;
    prefixes.reserve(sizes.size());
    for (std::size_t p : sizes) {
        std::uint64_t cutoff = s_sorted[p - 1].index;
        std::span<const IndexedLabel> sp(s_sorted.data(), p);
        auto lend = std::upper_bound(
            l_sorted.begin(), l_sorted.end(), cutoff,
            [](std::uint64_t v, const IndexedLabel& e) { return v < e.index; });
        std::span<const IndexedLabel> lp(l_sorted.data(),
                                         static_cast<std::size_t>(lend - l_sorted.begin()));
        prefixes.push_back({build_eval(lp, sp, C, stream, draw), p, s_m(p, delta)});
    }

    // scan dyadic levels downward; candidate 2^j0 passes iff every level
    // j in [j0, 0] passes
    for (int j = 0; j >= cfg.j_min; --j) {
        double level = std::ldexp(1.0, j - 4);
        double eps = std::ldexp(1.0, j);
        bool pass = false;
        for (const auto& pre : prefixes) {
            EvalOut o = pre.ev.eval(cfg.c_hat * eps);
            double md = static_cast<double>(pre.size);
            double u = cfg.k_hat * (o.phi_hat + std::sqrt(pre.sm * o.d_hat / md) + pre.sm / md);
            if (u <= level) {
                pass = true;
                break;
            }
        }
        if (!pass) {
            info.witness_j = j;
            if (j == 0) {
                info.top_capped = true;
                info.value = 1.0;
            } else {
                info.value = std::ldexp(1.0, j + 1);
            }
            return info;
        }
    }
    info.floor_hit = true;
    info.value = std::ldexp(1.0, cfg.j_min);
    info.witness_j = cfg.j_min - 1;
    return info;
}

double hat_bound(std::span<const IndexedLabel> S, double delta, std::span<const IndexedLabel> L,
                 const HypothesisClass& C, LabeledStream& stream, const RademacherDraw& draw,
                 const BoundConfig& cfg) {
    return hat_bound_info(S, delta, L, C, stream, draw, cfg).value;
}

// ---------------------------------------------------------------------------
// Distribution-dependent diagnostics.
// ---------------------------------------------------------------------------

namespace {

// hull of the true eps-minimal threshold set, via the problem's closed forms
struct TrueSublevel {
    double z_lo = 0.0, z_hi = 0.0;
    bool any = false;
};

TrueSublevel threshold_sublevel(const NoiseProblem& p, double excess) {
    SublevelHull h = threshold_error_sublevel(
        p, p.class_noise_rate(HypothesisClass::thresholds()) + excess, 0.0, 1.0);
    return {h.lo, h.hi, h.any};
}

}  // namespace

TildePhi tilde_phi(std::uint64_t m, double eps, const NoiseProblem& problem,
                   const HypothesisClass& C, const BoundConfig& cfg, std::uint64_t seed) {
    if (m == 0) return TildePhi{0.0, 0.0};
    if (C.is_grid() || C.kind != ClassKind::threshold)
        throw std::invalid_argument("tilde diagnostics support the threshold class");
    TrueSublevel lv = threshold_sublevel(problem, eps);
    if (!lv.any || lv.z_lo >= lv.z_hi) return TildePhi{0.0, 0.0};

    double acc = 0.0, acc2 = 0.0;
    int outer = cfg.tilde_outer;
    for (int t = 0; t < outer; ++t) {
        std::uint64_t key = mix64(seed, static_cast<std::uint64_t>(t));
        std::vector<double> xs(m);
        std::vector<int> ys(m);
        for (std::uint64_t i = 0; i < m; ++i) {
            xs[i] = problem.marginal.quantile(counter_u01(key, 2 * i));
            ys[i] = counter_u01(key, 2 * i + 1) < problem.eta(xs[i]) ? +1 : -1;
        }
        std::vector<std::size_t> order(m);
        for (std::uint64_t i = 0; i < m; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
        // g(z) = er(h_z) - er_m(h_z); er_m is constant on cells of the sample
        // and er is monotone within each cell, so cell edges carry the extremes
        double md = static_cast<double>(m);
        double gmax = -kInf, gmin = kInf;
        int minus_tot = 0;
        for (std::uint64_t i = 0; i < m; ++i) minus_tot += (ys[i] < 0);
        // pls/mns = label counts among sample points with x < z
        auto consider = [&](double z, int pls, int mns) {
            if (z < lv.z_lo || z > lv.z_hi) return;
            double emp_err = (pls + (minus_tot - mns)) / md;
            double g = problem.true_error(Hypothesis::threshold(z)) - emp_err;
            gmax = std::max(gmax, g);
            gmin = std::min(gmin, g);
        };
        int plus_seen = 0, minus_seen = 0;
        bool zstar_done = false;
        consider(lv.z_lo, 0, 0);
        for (std::uint64_t r = 0; r < m; ++r) {
            double x = xs[order[r]];
            if (!zstar_done && x >= problem.z_star) {
                consider(problem.z_star, plus_seen, minus_seen);
                zstar_done = true;
            }
            // z = x sits in the cell below x (x itself still predicted +1)
            consider(x, plus_seen, minus_seen);
            if (ys[order[r]] > 0)
                ++plus_seen;
            else
                ++minus_seen;
            // just above x: the cell where x flips to the -1 side
            consider(std::nextafter(x, 2.0), plus_seen, minus_seen);
        }
        if (!zstar_done) consider(problem.z_star, plus_seen, minus_seen);
        consider(lv.z_hi, plus_seen, minus_seen);
        double v = (gmax > gmin) ? gmax - gmin : 0.0;
        acc += v;
        acc2 += v * v;
    }
    double mean = acc / outer;
    double var = std::max(acc2 / outer - mean * mean, 0.0);
    return TildePhi{mean, outer > 1 ? std::sqrt(var / (outer - 1)) : 0.0};
}

double tilde_U(std::uint64_t m, double eps, double delta, const NoiseProblem& problem,
               const HypothesisClass& C, const BoundConfig& cfg, std::uint64_t seed) {
    if (m == 0) return kInf;
    TildePhi phi = tilde_phi(m, cfg.c_tilde * eps, problem, C, cfg, seed);
    TrueSublevel lv = threshold_sublevel(problem, cfg.c_tilde * eps);
    double diam = lv.any ? problem.marginal.interval_mass(lv.z_lo, lv.z_hi) : 0.0;
    double sm = s_m(m, delta);
    double md = static_cast<double>(m);
    return cfg.k_tilde * (phi.value + std::sqrt(sm * diam / md) + sm / md);
}

double tilde_bound(std::uint64_t m, double delta, const NoiseProblem& problem,
                   const HypothesisClass& C, const BoundConfig& cfg, std::uint64_t seed) {
    if (m == 0) return kInf;
    for (int j = 0; j >= cfg.j_min; --j) {
        double u = tilde_U(m, std::ldexp(1.0, j), delta, problem, C, cfg, seed);
        if (u > std::ldexp(1.0, j - 4)) {
            return j == 0 ? 1.0 : std::ldexp(1.0, j + 1);
        }
    }
    return std::ldexp(1.0, cfg.j_min);
}

namespace {

// memoized tilde bounds on a geometric grid of sample sizes; value at l is
// the bound at the grid point below (conservative)
class TildeBoundGrid {
  public:
    TildeBoundGrid(double delta, const NoiseProblem& p, const HypothesisClass& C,
                   const BoundConfig& cfg, std::uint64_t seed)
        : delta_(delta), p_(p), c_(C), cfg_(cfg), seed_(seed) {}

    double at(std::uint64_t l) {
        if (l == 0) return kInf;
        std::uint64_t g = 1;
        while (g * 2 <= l) g *= 2;  // largest power of two <= l
        auto it = memo_.find(g);
        if (it != memo_.end()) return it->second;
        double v = tilde_bound(g, delta_, p_, c_, cfg_, seed_);
        memo_.emplace(g, v);
        return v;
    }

  private:
    double delta_;
    const NoiseProblem& p_;
    const HypothesisClass& c_;
    const BoundConfig& cfg_;
    std::uint64_t seed_;
    std::map<std::uint64_t, double> memo_;
};

}  // namespace

std::uint64_t tilde_m(std::uint64_t n, double delta, const NoiseProblem& problem,
                      const HypothesisClass& C, const BoundConfig& cfg, std::uint64_t seed) {
    TildeBoundGrid grid(delta, problem, C, cfg, seed);
    double dis_sum = 0.0;
    const std::uint64_t cap = 1u << 22;
    for (std::uint64_t m = 1; m <= cap; ++m) {
        double b = grid.at(m - 1);
        double dis;
        if (b == kInf || 6.0 * b >= 1.0) {
            dis = 1.0;
        } else {
            TrueSublevel lv = threshold_sublevel(problem, 6.0 * b);
            dis = lv.any ? problem.marginal.interval_mass(lv.z_lo, lv.z_hi) : 0.0;
        }
        dis_sum += dis;
        double md = static_cast<double>(m);
        double rhs = std::log2(4.0 * md * md / delta) + 2.0 * std::exp(1.0) * dis_sum;
        if (static_cast<double>(n) <= rhs) return m;
    }
    return cap;
}

double r_coefficient(std::uint64_t n, double delta, const NoiseProblem& problem,
                     const HypothesisClass& C, const BoundConfig& cfg, std::uint64_t seed) {
    std::uint64_t mt = tilde_m(n, delta, problem, C, cfg, seed);
    TildeBoundGrid grid(delta, problem, C, cfg, seed);
    double acc = 0.0;
    for (std::uint64_t l = 0; l < mt; ++l) {
        double b = grid.at(l);
        double diam;
        if (b == kInf || 6.0 * b >= 1.0) {
            diam = 1.0;
        } else {
            TrueSublevel lv = threshold_sublevel(problem, 6.0 * b);
            diam = lv.any ? problem.marginal.interval_mass(lv.z_lo, lv.z_hi) : 0.0;
        }
        acc += diam;
    }
    return std::max(acc / static_cast<double>(mt), std::ldexp(1.0, -static_cast<int>(n)));
}

}  // namespace alrates
