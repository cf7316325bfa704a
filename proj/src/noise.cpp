#include "alrates/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "alrates/version_space.hpp"

namespace alrates {

namespace {

// sign with sign(0) = +1, matching h*(x) = 2*1[eta(x) >= 1/2] - 1
inline double sgn(double t) { return t >= 0.0 ? 1.0 : -1.0; }

}  // namespace

double NoiseProblem::eta(double x) const {
    switch (kind) {
        case Kind::threshold_noiseless: return x >= z_star ? 1.0 : 0.0;
        case Kind::threshold_bounded: return 0.5 + c_margin * sgn(x - z_star);
        case Kind::threshold_polynomial: {
            double t = std::fabs(x - z_star);
            double v = 0.5 + 0.5 * sgn(x - z_star) * std::pow(t, 1.0 / alpha);
            return std::clamp(v, 0.0, 1.0);
        }
        case Kind::interval_bounded:
            return (a_star <= x && x <= b_star) ? 0.5 + c_margin : 0.5 - c_margin;
    }
    return 0.5;
}

namespace {

// integral of |x - z|^(1/alpha) over [lo,hi) in Lebesgue measure
double pow_dev_integral(double lo, double hi, double z, double alpha) {
    if (hi <= lo) return 0.0;
    double e = 1.0 + 1.0 / alpha;
    auto W = [&](double t) { return std::pow(std::max(t, 0.0), e) / e; };
    double acc = 0.0;
    if (lo < z) {  // left part [lo, min(hi,z))
        double v = std::min(hi, z);
        acc += W(z - lo) - W(z - v);
    }
    if (hi > z) {  // right part [max(lo,z), hi)
        double u = std::max(lo, z);
        acc += W(hi - z) - W(u - z);
    }
    return acc;
}

}  // namespace

double NoiseProblem::eta_integral(double lo, double hi) const {
    lo = std::clamp(lo, 0.0, 1.0);
    hi = std::clamp(hi, 0.0, 1.0);
    if (hi <= lo) return 0.0;
    // Integrate piecewise against the marginal density.
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < marginal.edges.size(); ++i) {
        double a = std::max(lo, marginal.edges[i]);
        double b = std::min(hi, marginal.edges[i + 1]);
        if (b <= a) continue;
        double dens = marginal.weights[i] / (marginal.edges[i + 1] - marginal.edges[i]);
        double leb = 0.0;  // Lebesgue integral of eta over [a,b)
        switch (kind) {
            case Kind::threshold_noiseless:
                leb = std::max(0.0, b - std::max(a, z_star));
                break;
            case Kind::threshold_bounded: {
                double above = std::max(0.0, b - std::max(a, z_star));
                double below = (b - a) - above;
                leb = 0.5 * (b - a) + c_margin * (above - below);
                break;
            }
            case Kind::threshold_polynomial: {
                double above = pow_dev_integral(std::max(a, z_star), b, z_star, alpha);
                double below = pow_dev_integral(a, std::min(b, z_star), z_star, alpha);
                leb = 0.5 * (b - a) + 0.5 * (above - below);
                break;
            }
            case Kind::interval_bounded: {
                double inside = std::max(0.0, std::min(b, b_star) - std::max(a, a_star));
                leb = 0.5 * (b - a) + c_margin * (2.0 * inside - (b - a));
                break;
            }
        }
        acc += dens * leb;
    }
    return acc;
}

Hypothesis NoiseProblem::bayes() const {
    if (kind == Kind::interval_bounded) return Hypothesis::interval(a_star, b_star);
    return Hypothesis::threshold(z_star);
}

double NoiseProblem::nu_star() const {
    // min(eta, 1-eta) = 1/2 - |eta - 1/2|
    switch (kind) {
        case Kind::threshold_noiseless: return 0.0;
        case Kind::threshold_bounded:
        case Kind::interval_bounded: return 0.5 - c_margin;
        case Kind::threshold_polynomial: {
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < marginal.edges.size(); ++i) {
                double a = marginal.edges[i], b = marginal.edges[i + 1];
                double dens = marginal.weights[i] / (b - a);
                acc += dens * 0.5 * pow_dev_integral(a, b, z_star, alpha);
            }
            return 0.5 - acc;
        }
    }
    return 0.5;
}

double NoiseProblem::true_error(const Hypothesis& h) const {
    double total_eta = eta_integral(0.0, 1.0);
    if (h.kind == ClassKind::threshold) {
        double z = std::clamp(h.z(), 0.0, 1.0);
        // mistakes: predict -1 on [0,z) where Y=+1; predict +1 on [z,1] where Y=-1
        return eta_integral(0.0, z) + (marginal.interval_mass(z, 1.0) - (total_eta - eta_integral(0.0, z)));
    }
    if (h.kind == ClassKind::interval) {
        double a = h.a(), b = h.b();
        double in_eta = eta_integral(a, b);
        double in_mass = marginal.interval_mass(a, b);
        return (total_eta - in_eta) + (in_mass - in_eta);
    }
    throw std::invalid_argument("true_error: hypothesis class not defined on [0,1]");
}

double NoiseProblem::class_noise_rate(const HypothesisClass& C) const {
    if (C.is_grid()) {
        double best = 1.0;
        for (const auto& h : C.members) best = std::min(best, true_error(h));
        return best;
    }
    if (C.kind == ClassKind::interval) {
        if (kind == Kind::interval_bounded) return nu_star();
        // threshold target: approached by [z*, b) with b -> 1 (inf, not attained)
        return nu_star();
    }
    if (C.kind == ClassKind::threshold) {
        if (kind != Kind::interval_bounded) return nu_star();
        // er(h_z) is piecewise linear between breakpoints; minimize there
        double best = 1.0;
        std::vector<double> cand{1e-12, a_star, b_star, 1.0 - 1e-12};
        for (double e : marginal.edges)
            if (e > 0.0 && e < 1.0) cand.push_back(e);
        for (double z : cand) best = std::min(best, true_error(Hypothesis::threshold(z)));
        return best;
    }
    throw std::invalid_argument("class noise rate: unsupported class");
}

void NoiseProblem::certify_tsybakov(std::size_t grid) {
    double kappa;
    switch (kind) {
        case Kind::threshold_polynomial: kappa = (1.0 + alpha) / alpha; break;
        case Kind::threshold_bounded:
        case Kind::interval_bounded: kappa = 1.0; break;
        case Kind::threshold_noiseless: kappa = 1.0; break;
    }
    HypothesisClass C = HypothesisClass::thresholds();
    double nu = class_noise_rate(C);
    std::vector<double> excess(grid);
    for (std::size_t i = 0; i < grid; ++i) {
        double z = (static_cast<double>(i) + 0.5) / static_cast<double>(grid);
        excess[i] = true_error(Hypothesis::threshold(z)) - nu;
    }
    double mu = 0.0;
    for (int k = 1; k <= 10; ++k) {
        double eps = std::ldexp(1.0, -k);
        double lo = 1.0, hi = 0.0;
        for (std::size_t i = 0; i < grid; ++i) {
            if (excess[i] <= eps) {
                double z = (static_cast<double>(i) + 0.5) / static_cast<double>(grid);
                lo = std::min(lo, z);
                hi = std::max(hi, z);
            }
        }
        if (hi > lo) {
            double diam = marginal.interval_mass(lo, hi);
            mu = std::max(mu, diam / std::pow(eps, 1.0 / kappa));
        }
    }
    tsybakov = TsybakovTag{kappa, mu * (1.0 + 1e-9) + 1e-12};
}

namespace {

NoiseProblem base_problem(NoiseProblem::Kind k) {
    NoiseProblem p;
    p.kind = k;
    p.marginal = Marginal::uniform01();
    return p;
}

}  // namespace

NoiseProblem make_noiseless_threshold(double z_star) {
    if (!(z_star > 0.0 && z_star < 1.0)) throw std::invalid_argument("z* must lie in (0,1)");
    NoiseProblem p = base_problem(NoiseProblem::Kind::threshold_noiseless);
    p.z_star = z_star;
    return p;
}

NoiseProblem make_bounded_threshold(double c_margin, double z_star) {
    if (!(c_margin > 0.0 && c_margin < 0.5)) throw std::invalid_argument("c must lie in (0,1/2)");
    if (!(z_star > 0.0 && z_star < 1.0)) throw std::invalid_argument("z* must lie in (0,1)");
    NoiseProblem p = base_problem(NoiseProblem::Kind::threshold_bounded);
    p.c_margin = c_margin;
    p.z_star = z_star;
    p.tsybakov = TsybakovTag{1.0, 1.0 / c_margin};
    return p;
}

NoiseProblem make_polynomial_threshold(double alpha, double z_star) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    if (!(z_star > 0.0 && z_star < 1.0)) throw std::invalid_argument("z* must lie in (0,1)");
    NoiseProblem p = base_problem(NoiseProblem::Kind::threshold_polynomial);
    p.alpha = alpha;
    p.z_star = z_star;
    p.tsybakov = TsybakovTag{(1.0 + alpha) / alpha, 0.0};
    p.certify_tsybakov();
    return p;
}

NoiseProblem make_bounded_interval(double c_margin, double a_star, double b_star) {
    if (!(c_margin > 0.0 && c_margin < 0.5)) throw std::invalid_argument("c must lie in (0,1/2)");
    if (!(0.0 < a_star && a_star < b_star && b_star < 1.0))
        throw std::invalid_argument("need 0 < a* < b* < 1");
    NoiseProblem p = base_problem(NoiseProblem::Kind::interval_bounded);
    p.c_margin = c_margin;
    p.a_star = a_star;
    p.b_star = b_star;
    p.tsybakov = TsybakovTag{1.0, 1.0 / c_margin};
    return p;
}

NoiseProblem make_tsybakov_threshold(double alpha_or_c, double z_star, bool bounded_flavor) {
    return bounded_flavor ? make_bounded_threshold(alpha_or_c, z_star)
                          : make_polynomial_threshold(alpha_or_c, z_star);
}

double true_error(const Hypothesis& h, const NoiseProblem& p) { return p.true_error(h); }

SublevelHull threshold_error_sublevel(const NoiseProblem& p, double level, double lo0,
                                      double hi0) {
    auto er = [&](double z) { return p.true_error(Hypothesis::threshold(z)); };
    std::vector<double> brk{lo0, hi0};
    if (p.kind == NoiseProblem::Kind::interval_bounded) {
        brk.push_back(p.a_star);
        brk.push_back(p.b_star);
    } else {
        brk.push_back(p.z_star);
    }
    std::sort(brk.begin(), brk.end());
    SublevelHull hull;
    auto absorb = [&](double z) {
        if (!hull.any) {
            hull.any = true;
            hull.lo = hull.hi = z;
        } else {
            hull.lo = std::min(hull.lo, z);
            hull.hi = std::max(hull.hi, z);
        }
    };
    // er is monotone on each segment between breakpoints; bisect crossings
    for (std::size_t s = 0; s + 1 < brk.size(); ++s) {
        double u = std::clamp(brk[s], lo0, hi0), v = std::clamp(brk[s + 1], lo0, hi0);
        if (v <= u) continue;
        double eu = er(u), ev = er(v);
        if (eu <= level) absorb(u);
        if (ev <= level) absorb(v);
        if ((eu <= level) == (ev <= level)) continue;
        double a = u, b = v;  // bisect the boundary of {er <= level}
        for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
            double mid = 0.5 * (a + b);
            if ((er(mid) <= level) == (eu <= level))
                a = mid;
            else
                b = mid;
        }
        absorb(eu <= level ? a : b);
    }
    return hull;
}

double eps_minimal_diameter(double eps, const VersionSpace& V, const NoiseProblem& problem) {
    if (V.empty) throw std::invalid_argument("eps-minimal diameter of an empty version space");
    if (V.rep == VersionSpace::Rep::grid_subset) {
        double best_err = 1.0 + 1e9;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < V.mask.size(); ++i) {
            if (!V.mask[i]) continue;
            idx.push_back(i);
            best_err = std::min(best_err, problem.true_error(V.cls->members[i]));
        }
        std::vector<std::size_t> kept;
        for (std::size_t i : idx)
            if (problem.true_error(V.cls->members[i]) - best_err <= eps) kept.push_back(i);
        double d = 0.0;
        for (std::size_t u = 0; u < kept.size(); ++u)
            for (std::size_t v = u + 1; v < kept.size(); ++v)
                d = std::max(d, disagreement_mass(V.cls->members[kept[u]],
                                                  V.cls->members[kept[v]], problem.marginal));
        return d;
    }
    if (V.rep == VersionSpace::Rep::threshold_range) {
        // inf er over the range, then the sublevel hull
        double lo = V.z_lo, hi = V.z_hi;
        std::vector<double> cand{lo, hi};
        if (problem.kind == NoiseProblem::Kind::interval_bounded) {
            cand.push_back(problem.a_star);
            cand.push_back(problem.b_star);
        } else {
            cand.push_back(problem.z_star);
        }
        double best = 1.0 + 1e9;
        for (double z : cand)
            if (z >= lo && z <= hi) best = std::min(best, problem.true_error(Hypothesis::threshold(z)));
        SublevelHull h = threshold_error_sublevel(problem, best + eps, lo, hi);
        if (!h.any) return 0.0;
        return problem.marginal.interval_mass(h.lo, h.hi);
    }
    throw std::invalid_argument("eps-minimal diameter: use a grid for this representation");
}

std::string NoiseProblem::to_config() const {
    nlohmann::json j;
    switch (kind) {
        case Kind::threshold_noiseless: j["kind"] = "noiseless_threshold"; break;
        case Kind::threshold_bounded: j["kind"] = "bounded_threshold"; break;
        case Kind::threshold_polynomial: j["kind"] = "polynomial_threshold"; break;
        case Kind::interval_bounded: j["kind"] = "bounded_interval"; break;
    }
    if (kind == Kind::interval_bounded) {
        j["a_star"] = a_star;
        j["b_star"] = b_star;
    } else {
        j["z_star"] = z_star;
    }
    if (kind == Kind::threshold_polynomial) j["alpha"] = alpha;
    if (kind == Kind::threshold_bounded || kind == Kind::interval_bounded)
        j["c"] = c_margin;
    if (marginal.is_uniform01()) {
        j["marginal"] = "uniform01";
    } else {
        j["marginal"] = {{"edges", marginal.edges}, {"weights", marginal.weights}};
    }
    return j.dump();
}

NoiseProblem NoiseProblem::from_config(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::string kind = j.at("kind");
    NoiseProblem p;
    if (kind == "noiseless_threshold") {
        p = make_noiseless_threshold(j.at("z_star"));
    } else if (kind == "bounded_threshold") {
        p = make_bounded_threshold(j.at("c"), j.at("z_star"));
    } else if (kind == "polynomial_threshold") {
        p = make_polynomial_threshold(j.at("alpha"), j.at("z_star"));
    } else if (kind == "bounded_interval") {
        p = make_bounded_interval(j.at("c"), j.at("a_star"), j.at("b_star"));
    } else {
        throw std::invalid_argument("unknown problem kind: " + kind);
    }
    if (j.contains("marginal") && j["marginal"].is_object()) {
        p.marginal = Marginal::piecewise(j["marginal"]["edges"].get<std::vector<double>>(),
                                         j["marginal"]["weights"].get<std::vector<double>>());
        if (p.kind == Kind::threshold_polynomial) p.certify_tsybakov();
    }
    return p;
}

}  // namespace alrates
