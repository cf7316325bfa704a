#include "alrates/disagreement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "alrates/region.hpp"
#include "alrates/rng.hpp"
#include "alrates/version_space.hpp"

namespace alrates {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

ThetaBracket theta_analytic(const HypothesisClass& C, const Hypothesis& h, const Marginal& m) {
    if (C.kind == ClassKind::threshold && h.kind == ClassKind::threshold &&
        m.kind == Marginal::Kind::piecewise01) {
        if (!(h.z() > 0.0 && h.z() < 1.0))
            throw std::invalid_argument("threshold coefficient needs z in (0,1)");
        return {2.0, 2.0};
    }
    if (C.kind == ClassKind::interval && h.kind == ClassKind::interval &&
        m.kind == Marginal::Kind::piecewise01) {
        double width = m.interval_mass(h.a(), h.b());
        if (width <= 0.0) throw std::invalid_argument("interval carries no mass");
        double v = std::max(1.0 / width, 4.0);
        return {v, v};
    }
    if (C.kind == ClassKind::sphere_halfspace && h.kind == ClassKind::sphere_halfspace &&
        m.kind == Marginal::Kind::sphere) {
        double sd = std::sqrt(static_cast<double>(m.dim));
        return {kPi * sd / 4.0, kPi * sd};
    }
    throw std::invalid_argument("no closed-form coefficient for this class/marginal pair");
}

std::vector<double> default_r_grid(const Hypothesis& h, double r0) {
    std::vector<double> grid;
    for (int k = 1; k <= 20; ++k) {
        double r = std::ldexp(1.0, -k);
        if (r > r0 && r <= 1.0) grid.push_back(r);
    }
    if (h.kind == ClassKind::interval) {
        double w = h.b() - h.a();
        if (w > r0 && w <= 1.0) grid.push_back(w);
    }
    std::sort(grid.rbegin(), grid.rend());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

namespace {

Region dis_of_ball(const HypothesisClass& C, const Hypothesis& h, double r, const Marginal& m,
                   bool* empty_ball) {
    *empty_ball = false;
    if (!C.is_grid() && C.kind == ClassKind::sphere_halfspace) {
        double alpha = std::min(r * kPi, kPi / 2.0);
        double band = std::sin(alpha);
        std::vector<double> w = h.params;
        return Region::from_membership([w, band](PointView x) {
            double dot = 0.0;
            for (std::size_t i = 0; i < w.size(); ++i) dot += w[i] * x[i];
            return std::fabs(dot) < band;
        });
    }
    VersionSpace B = ball(C, h, r, m);
    if (B.empty) {
        *empty_ball = true;
        return Region::empty_region();
    }
    return disagreement_region(B);
}

}  // namespace

ThetaEstimate theta_estimate(const HypothesisClass& C, const Hypothesis& h, const Marginal& m,
                             double r0, std::vector<double> r_grid, std::uint64_t mc_budget,
                             std::uint64_t seed, bool force_mc) {
    if (mc_budget < 10000) throw std::invalid_argument("MC budget must be at least 10^4");
    std::sort(r_grid.rbegin(), r_grid.rend());
    r_grid.erase(std::remove_if(r_grid.begin(), r_grid.end(),
                                [&](double r) { return !(r > r0 && r <= 1.0); }),
                 r_grid.end());
    if (r_grid.empty()) throw std::invalid_argument("empty r grid after filtering to (r0, 1]");

    ThetaEstimate est;
    est.r_grid = r_grid;
    est.exact_mode = true;
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        double r = r_grid[i];
        bool empty_ball = false;
        Region dis = dis_of_ball(C, h, r, m, &empty_ball);
        double mass = 0.0, se = 0.0;
        if (empty_ball) {
            mass = 0.0;
        } else if (!force_mc && dis.kind != Region::Kind::membership &&
                   m.kind == Marginal::Kind::piecewise01) {
            mass = region_mass(dis, m);
        } else if (dis.kind == Region::Kind::empty) {
            mass = 0.0;
        } else if (dis.kind == Region::Kind::all) {
            mass = 1.0;
        } else {
            McEstimate mc = region_mass_mc(dis, m, mc_budget, mix64(seed, i));
            mass = mc.estimate;
            se = mc.std_error;
            est.exact_mode = false;
        }
        est.masses.push_back(mass);
        est.mass_errors.push_back(se);
        double ratio = mass / r;
        if (ratio > est.value) {
            est.value = ratio;
            est.r_at_sup = r;
            est.std_error = se / r;
        }
    }
    return est;
}

// ---------------------------------------------------------------------------
// Lemma fixtures.
// ---------------------------------------------------------------------------

namespace {

struct Est {
    double v = 0.0;
    double se = 0.0;
};

Est run_est(const HypothesisClass& C, const Hypothesis& h, const Marginal& m,
            std::vector<double> grid, std::uint64_t budget, std::uint64_t seed) {
    ThetaEstimate e = theta_estimate(C, h, m, 1e-7, std::move(grid), budget, seed, true);
    return {e.value, e.std_error};
}

LemmaCheckResult check_le(std::string name, Est lhs, Est rhs, double extra_rhs,
                          std::string detail) {
    LemmaCheckResult r;
    r.name = std::move(name);
    r.lhs = lhs.v;
    r.rhs = rhs.v + extra_rhs;
    r.slack = 3.0 * (lhs.se + rhs.se);
    r.pass = r.lhs <= r.rhs + r.slack;
    r.detail = std::move(detail);
    return r;
}

}  // namespace

std::vector<LemmaCheckResult> lemma_checks(std::uint64_t mc_budget, std::uint64_t seed) {
    std::vector<LemmaCheckResult> out;
    Marginal uni = Marginal::uniform01();

    // close marginals, lambda = 1: identical marginal, equality
    {
        HypothesisClass thr = HypothesisClass::thresholds();
        Hypothesis h = Hypothesis::threshold(0.5);
        auto grid = default_r_grid(h, 1e-7);
        Est a = run_est(thr, h, uni, grid, mc_budget, mix64(seed, 101));
        Est b = run_est(thr, h, uni, grid, mc_budget, mix64(seed, 102));
        LemmaCheckResult r;
        r.name = "close-marginals lambda=1 equality";
        r.lhs = std::fabs(a.v - b.v);
        r.rhs = 0.0;
        r.slack = 3.0 * (a.se + b.se);
        r.pass = r.lhs <= r.slack;
        r.detail = "theta and theta' under the identical marginal";
        out.push_back(r);
    }

    // close marginals, lambda = 1/2: densities 0.5 / 1.5 across [0,1/2)/[1/2,1)
    {
        HypothesisClass intervals = HypothesisClass::intervals();
        Hypothesis h = Hypothesis::interval(0.1, 0.3);
        Marginal skew = Marginal::piecewise({0.0, 0.5, 1.0}, {0.25, 0.75});
        double lambda = 0.5;
        // critical radii: interval mass under each marginal
        std::vector<double> grid = default_r_grid(h, 1e-7);
        grid.push_back(uni.interval_mass(0.1, 0.3));
        grid.push_back(skew.interval_mass(0.1, 0.3));
        Est theta = run_est(intervals, h, uni, grid, mc_budget, mix64(seed, 201));
        Est theta_p = run_est(intervals, h, skew, grid, mc_budget, mix64(seed, 202));
        out.push_back(check_le("close-marginals lower", {lambda * lambda * theta.v, lambda * lambda * theta.se},
                               theta_p, 0.0, "lambda^2 theta <= theta'"));
        out.push_back(check_le("close-marginals upper", theta_p,
                               {theta.v / (lambda * lambda), theta.se / (lambda * lambda)}, 0.0,
                               "theta' <= theta / lambda^2"));
    }

    // finite mixture: uniform = (1/2) uniform[0,1/2) + (1/2) uniform[1/2,1)
    {
        HypothesisClass thr = HypothesisClass::thresholds();
        Hypothesis h = Hypothesis::threshold(0.5);
        Marginal d1 = Marginal::piecewise({0.0, 0.5, 1.0}, {1.0, 0.0});
        Marginal d2 = Marginal::piecewise({0.0, 0.5, 1.0}, {0.0, 1.0});
        auto grid = default_r_grid(h, 1e-7);
        Est t = run_est(thr, h, uni, grid, mc_budget, mix64(seed, 301));
        Est t1 = run_est(thr, h, d1, grid, mc_budget, mix64(seed, 302));
        Est t2 = run_est(thr, h, d2, grid, mc_budget, mix64(seed, 303));
        out.push_back(check_le("mixture", t, {t1.v + t2.v, t1.se + t2.se}, 0.0,
                               "theta <= theta^(1) + theta^(2) under the mixture"));
    }

    // finite union, h in both classes: threshold grids over (0,0.7), (0.3,1)
    {
        std::vector<Hypothesis> m1, m2, mu;
        for (int k = 1; k < 1400; ++k) m1.push_back(Hypothesis::threshold(k / 2000.0));
        for (int k = 601; k < 2000; ++k) m2.push_back(Hypothesis::threshold(k / 2000.0));
        for (int k = 1; k < 2000; ++k) mu.push_back(Hypothesis::threshold(k / 2000.0));
        HypothesisClass c1 = HypothesisClass::from_members(m1, 1);
        HypothesisClass c2 = HypothesisClass::from_members(m2, 1);
        HypothesisClass cu = HypothesisClass::from_members(mu, 1);
        Hypothesis h = Hypothesis::threshold(0.5);
        std::vector<double> grid;
        for (int k = 1; k <= 8; ++k) grid.push_back(std::ldexp(1.0, -k));
        Est t1 = run_est(c1, h, uni, grid, mc_budget, mix64(seed, 401));
        Est t2 = run_est(c2, h, uni, grid, mc_budget, mix64(seed, 402));
        Est t = run_est(cu, h, uni, grid, mc_budget, mix64(seed, 403));
        out.push_back(check_le("union lower", {std::max(t1.v, t2.v), t1.se + t2.se}, t, 0.0,
                               "max theta^(i) <= theta under the union"));
        out.push_back(check_le("union upper", t, {t1.v + t2.v, t1.se + t2.se}, 0.0,
                               "theta <= theta^(1) + theta^(2) under the union"));
    }

    // finite union, h outside C_1: thresholds u intervals, h an interval
    {
        std::vector<Hypothesis> m1, m2, mu;
        for (int k = 1; k < 256; ++k) m1.push_back(Hypothesis::threshold(k / 256.0));
        for (int i = 1; i < 100; ++i)
            for (int j = i + 1; j < 100; ++j)
                m2.push_back(Hypothesis::interval(i / 100.0, j / 100.0));
        mu = m1;
        mu.insert(mu.end(), m2.begin(), m2.end());
        HypothesisClass c1 = HypothesisClass::from_members(m1, 1);
        HypothesisClass c2 = HypothesisClass::from_members(m2, 2);
        HypothesisClass cu = HypothesisClass::from_members(mu, 2);
        Hypothesis h = Hypothesis::interval(0.4, 0.6);
        auto grid = default_r_grid(h, 1e-7);
        Est t1 = run_est(c1, h, uni, grid, mc_budget, mix64(seed, 501));
        Est t2 = run_est(c2, h, uni, grid, mc_budget, mix64(seed, 502));
        Est t = run_est(cu, h, uni, grid, mc_budget, mix64(seed, 503));
        out.push_back(check_le("union outside +2", t, {t1.v + t2.v + 2.0, t1.se + t2.se}, 0.0,
                               "theta <= theta^(1) + theta^(2) + 2 for h outside C_1"));
    }
    return out;
}

}  // namespace alrates
