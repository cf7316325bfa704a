#include "alrates/version_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace alrates {

namespace {

// positive region of a 1-D hypothesis as [lo, hi)
std::pair<double, double> positive_region1(const Hypothesis& h) {
    if (h.kind == ClassKind::threshold) return {h.z(), 1.0};
    return {h.a(), h.b()};
}

bool range_empty(double lo, double hi, bool lo_incl, bool hi_incl) {
    if (lo > hi) return true;
    if (lo == hi) return !(lo_incl && hi_incl);
    return false;
}

}  // namespace

std::size_t VersionSpace::grid_count() const {
    std::size_t n = 0;
    for (char c : mask) n += (c != 0);
    return n;
}

bool VersionSpace::contains(const Hypothesis& h) const {
    if (empty) return false;
    switch (rep) {
        case Rep::threshold_range: {
            if (h.kind != ClassKind::threshold) return false;
            double z = h.z();
            if (z < z_lo || (z == z_lo && !z_lo_incl)) return false;
            if (z > z_hi || (z == z_hi && !z_hi_incl)) return false;
            return true;
        }
        case Rep::interval_rect:
            return h.kind == ClassKind::interval && h.a() > a_lo && h.a() <= a_hi &&
                   h.b() >= b_lo && h.b() < b_hi;
        case Rep::interval_ball:
            return disagreement_mass(center, h, metric) <= radius;
        case Rep::grid_subset: {
            for (std::size_t i = 0; i < mask.size(); ++i)
                if (mask[i] && cls->members[i] == h) return true;
            return false;
        }
    }
    return false;
}

bool VersionSpace::is_singleton() const {
    if (empty) return false;
    switch (rep) {
        case Rep::threshold_range: return z_lo == z_hi;
        case Rep::interval_rect: return a_lo == a_hi && b_lo == b_hi;
        case Rep::interval_ball: return radius == 0.0;
        case Rep::grid_subset: return grid_count() == 1;
    }
    return false;
}

VersionSpace full_version_space(const HypothesisClass& C, const Marginal& marginal) {
    VersionSpace v;
    v.cls = &C;
    if (C.is_grid()) {
        v.rep = VersionSpace::Rep::grid_subset;
        v.mask.assign(C.members.size(), 1);
        return v;
    }
    switch (C.kind) {
        case ClassKind::threshold:
            v.rep = VersionSpace::Rep::threshold_range;
            v.z_lo = 0.0;
            v.z_hi = 1.0;
            v.z_lo_incl = false;
            v.z_hi_incl = false;
            return v;
        case ClassKind::interval:
            v.rep = VersionSpace::Rep::interval_ball;
            v.center = Hypothesis::interval(0.25, 0.75);
            v.radius = 1.0;
            v.metric = marginal;
            return v;
        default:
            throw std::invalid_argument("full version space: use a grid for sphere classes");
    }
}

VersionSpace with_constraint(const VersionSpace& V, double x, Label y) {
    VersionSpace w = V;
    if (V.empty) return w;
    switch (V.rep) {
        case VersionSpace::Rep::threshold_range:
            if (y == +1) {
                // h_z(x) = +1 iff x >= z, so z <= x
                if (x < w.z_hi || (x == w.z_hi && !w.z_hi_incl)) {
                    w.z_hi = x;
                    w.z_hi_incl = true;
                }
            } else {
                // z > x
                if (x > w.z_lo || (x == w.z_lo && w.z_lo_incl)) {
                    w.z_lo = x;
                    w.z_lo_incl = false;
                }
            }
            w.empty = range_empty(w.z_lo, w.z_hi, w.z_lo_incl, w.z_hi_incl);
            return w;
        case VersionSpace::Rep::interval_rect:
            if (y == +1) {
                w.a_hi = std::min(w.a_hi, x);
                w.b_lo = std::max(w.b_lo, x);
            } else {
                if (x >= w.a_hi && x <= w.b_lo) {
                    w.empty = true;  // core point forced negative
                } else if (x < w.a_hi) {
                    w.a_lo = std::max(w.a_lo, x);
                } else {
                    w.b_hi = std::min(w.b_hi, x);
                }
            }
            if (w.a_lo >= w.a_hi || w.b_lo >= w.b_hi) w.empty = true;
            return w;
        case VersionSpace::Rep::grid_subset: {
            bool any = false;
            for (std::size_t i = 0; i < w.mask.size(); ++i) {
                if (!w.mask[i]) continue;
                if (predict1(V.cls->members[i], x) != y)
                    w.mask[i] = 0;
                else
                    any = true;
            }
            w.empty = !any;
            return w;
        }
        case VersionSpace::Rep::interval_ball:
            throw std::invalid_argument("constraints on a ball representation are unsupported");
    }
    return w;
}

VersionSpace with_constraint(const VersionSpace& V, PointView x, Label y) {
    if (V.rep == VersionSpace::Rep::grid_subset && V.cls->ambient_dim != 1) {
        VersionSpace w = V;
        bool any = false;
        for (std::size_t i = 0; i < w.mask.size(); ++i) {
            if (!w.mask[i]) continue;
            if (predict(V.cls->members[i], x) != y)
                w.mask[i] = 0;
            else
                any = true;
        }
        w.empty = !any;
        return w;
    }
    return with_constraint(V, x[0], y);
}

double disagreement_mass(const Hypothesis& h1, const Hypothesis& h2, const Marginal& m) {
    if (h1.kind == ClassKind::sphere_halfspace || h2.kind == ClassKind::sphere_halfspace) {
        if (h1.kind != h2.kind) throw std::invalid_argument("mixed sphere/1-D hypotheses");
        double dot = 0.0;
        for (std::size_t i = 0; i < h1.params.size(); ++i) dot += h1.params[i] * h2.params[i];
        dot = std::clamp(dot, -1.0, 1.0);
        return std::acos(dot) / 3.14159265358979323846;
    }
    auto [l1, r1] = positive_region1(h1);
    auto [l2, r2] = positive_region1(h2);
    // mass of symmetric difference of [l1,r1) and [l2,r2)
    double inter = std::max(0.0, m.cdf(std::min(r1, r2)) - m.cdf(std::max(l1, l2)));
    double m1 = m.interval_mass(l1, r1);
    double m2 = m.interval_mass(l2, r2);
    return m1 + m2 - 2.0 * inter;
}

Region disagreement_region(const VersionSpace& V) {
    if (V.empty) throw std::invalid_argument("disagreement region of an empty version space");
    switch (V.rep) {
        case VersionSpace::Rep::threshold_range:
            if (V.z_lo >= V.z_hi) return Region::empty_region();
            return Region::from_pieces({{V.z_lo, V.z_hi}});
        case VersionSpace::Rep::interval_rect: {
            std::vector<std::pair<double, double>> ps;
            if (V.a_lo < V.a_hi) ps.emplace_back(V.a_lo, V.a_hi);
            if (V.b_lo < V.b_hi) ps.emplace_back(V.b_lo, V.b_hi);
            return Region::from_pieces(std::move(ps));
        }
        case VersionSpace::Rep::interval_ball: {
            if (V.radius <= 0.0) return Region::empty_region();
            double a = V.center.a(), b = V.center.b(), r = V.radius;
            const Marginal& F = V.metric;
            if (r >= F.interval_mass(a, b)) return Region::everything();
            double fa = F.cdf(a), fb = F.cdf(b);
            auto clip = [&](double p) { return std::clamp(p, 0.0, 1.0); };
            return Region::from_pieces(
                {{F.quantile(clip(fa - r)), F.quantile(clip(fa + r))},
                 {F.quantile(clip(fb - r)), F.quantile(clip(fb + r))}});
        }
        case VersionSpace::Rep::grid_subset: {
            std::size_t n = V.grid_count();
            if (n == 0) throw std::invalid_argument("disagreement region of an empty version space");
            if (n == 1) return Region::empty_region();
            if (V.cls->ambient_dim != 1) {
                const VersionSpace* vp = &V;
                std::vector<Hypothesis> surv;
                for (std::size_t i = 0; i < V.mask.size(); ++i)
                    if (V.mask[i]) surv.push_back(V.cls->members[i]);
                return Region::from_membership([surv = std::move(surv)](PointView x) {
                    Label first = predict(surv.front(), x);
                    for (std::size_t i = 1; i < surv.size(); ++i)
                        if (predict(surv[i], x) != first) return true;
                    return false;
                });
            }
            // 1-D sweep: a cell is in DIS iff its positive-cover count is
            // strictly between 0 and the number of survivors.
            std::vector<std::pair<double, int>> events;
            for (std::size_t i = 0; i < V.mask.size(); ++i) {
                if (!V.mask[i]) continue;
                auto [lo, hi] = positive_region1(V.cls->members[i]);
                events.emplace_back(lo, +1);
                events.emplace_back(hi, -1);
            }
            std::sort(events.begin(), events.end());
            std::vector<std::pair<double, double>> ps;
            double prev = 0.0;
            long cover = 0;
            for (auto& [x, dv] : events) {
                if (x > prev && cover > 0 && cover < static_cast<long>(n))
                    ps.emplace_back(prev, x);
                if (x > prev) prev = x;
                cover += dv;
            }
            if (prev < 1.0 && cover > 0 && cover < static_cast<long>(n))
                ps.emplace_back(prev, 1.0);
            return Region::from_pieces(std::move(ps));
        }
    }
    return Region::empty_region();
}

VersionSpace ball(const HypothesisClass& C, const Hypothesis& h, double r, const Marginal& m) {
    r = std::clamp(r, 0.0, 1.0);
    VersionSpace v;
    v.cls = &C;
    if (C.is_grid()) {
        v.rep = VersionSpace::Rep::grid_subset;
        v.mask.assign(C.members.size(), 0);
        bool any = false;
        for (std::size_t i = 0; i < C.members.size(); ++i) {
            if (disagreement_mass(h, C.members[i], m) <= r) {
                v.mask[i] = 1;
                any = true;
            }
        }
        v.empty = !any;
        return v;
    }
    switch (C.kind) {
        case ClassKind::threshold: {
            v.rep = VersionSpace::Rep::threshold_range;
            double fz = m.cdf(h.z());
            v.z_lo = m.quantile(std::max(0.0, fz - r));
            v.z_hi = m.quantile(std::min(1.0, fz + r));
            v.z_lo_incl = true;
            v.z_hi_incl = true;
            return v;
        }
        case ClassKind::interval:
            v.rep = VersionSpace::Rep::interval_ball;
            v.center = h;
            v.radius = r;
            v.metric = m;
            return v;
        default:
            throw std::invalid_argument("ball: parametric sphere class needs a grid");
    }
}

double diameter(const VersionSpace& V, const Marginal& m) {
    if (V.empty) throw std::invalid_argument("diameter of an empty version space");
    switch (V.rep) {
        case VersionSpace::Rep::threshold_range:
            return m.cdf(V.z_hi) - m.cdf(V.z_lo);
        case VersionSpace::Rep::interval_rect:
            return (m.cdf(V.a_hi) - m.cdf(V.a_lo)) + (m.cdf(V.b_hi) - m.cdf(V.b_lo));
        case VersionSpace::Rep::interval_ball:
            // exact when the ball does not touch the domain boundary
            return std::min(2.0 * V.radius, 1.0);
        case VersionSpace::Rep::grid_subset: {
            double best = 0.0;
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < V.mask.size(); ++i)
                if (V.mask[i]) idx.push_back(i);
            if (idx.empty()) throw std::invalid_argument("diameter of an empty version space");
            for (std::size_t i = 0; i < idx.size(); ++i)
                for (std::size_t j = i + 1; j < idx.size(); ++j)
                    best = std::max(best, disagreement_mass(V.cls->members[idx[i]],
                                                            V.cls->members[idx[j]], m));
            return best;
        }
    }
    return 0.0;
}

Hypothesis representative(const VersionSpace& V) {
    if (V.empty) throw std::invalid_argument("representative of an empty version space");
    switch (V.rep) {
        case VersionSpace::Rep::threshold_range:
            return Hypothesis::threshold(V.z_lo_incl ? V.z_lo
                                                     : std::nextafter(V.z_lo, 2.0));
        case VersionSpace::Rep::interval_rect:
            return Hypothesis::interval(std::nextafter(V.a_lo, 2.0), V.b_lo);
        case VersionSpace::Rep::interval_ball:
            return V.center;
        case VersionSpace::Rep::grid_subset:
            for (std::size_t i = 0; i < V.mask.size(); ++i)
                if (V.mask[i]) return V.cls->members[i];
            throw std::invalid_argument("representative of an empty version space");
    }
    throw std::logic_error("unreachable");
}

}  // namespace alrates
