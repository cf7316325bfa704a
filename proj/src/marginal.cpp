#include "alrates/marginal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "alrates/rng.hpp"

namespace alrates {

Marginal Marginal::uniform01() { return Marginal{}; }

Marginal Marginal::piecewise(std::vector<double> edges, std::vector<double> weights) {
    if (edges.size() < 2 || weights.size() + 1 != edges.size())
        throw std::invalid_argument("piecewise marginal: need k+1 edges for k weights");
    if (edges.front() != 0.0 || edges.back() != 1.0)
        throw std::invalid_argument("piecewise marginal: edges must span [0,1]");
    double tot = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (!(edges[i] < edges[i + 1])) throw std::invalid_argument("edges must increase");
        if (weights[i] < 0.0) throw std::invalid_argument("negative piece weight");
        tot += weights[i];
    }
    if (std::fabs(tot - 1.0) > 1e-12) throw std::invalid_argument("piece weights must sum to 1");
    Marginal m;
    m.kind = Kind::piecewise01;
    m.dim = 1;
    m.edges = std::move(edges);
    m.weights = std::move(weights);
    return m;
}

Marginal Marginal::sphere(int d) {
    if (d < 2) throw std::invalid_argument("sphere marginal needs d >= 2");
    Marginal m;
    m.kind = Kind::sphere;
    m.dim = d;
    return m;
}

bool Marginal::is_uniform01() const {
    return kind == Kind::piecewise01 && weights.size() == 1;
}

double Marginal::cdf(double x) const {
    if (kind != Kind::piecewise01) throw std::invalid_argument("cdf: 1-D marginal only");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (x >= edges[i + 1]) {
            acc += weights[i];
        } else {
            acc += weights[i] * (x - edges[i]) / (edges[i + 1] - edges[i]);
            break;
        }
    }
    return acc;
}

double Marginal::quantile(double p) const {
    if (kind != Kind::piecewise01) throw std::invalid_argument("quantile: 1-D marginal only");
    p = std::clamp(p, 0.0, 1.0);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (p <= acc + weights[i] || i + 2 == edges.size()) {
            if (weights[i] <= 0.0) return edges[i + 1];  // zero-mass piece
            return edges[i] + (p - acc) / weights[i] * (edges[i + 1] - edges[i]);
        }
        acc += weights[i];
    }
    return 1.0;
}

double Marginal::interval_mass(double lo, double hi) const {
    if (hi <= lo) return 0.0;
    return cdf(hi) - cdf(lo);
}

double Marginal::density(double x) const {
    if (kind != Kind::piecewise01) throw std::invalid_argument("density: 1-D marginal only");
    if (x < 0.0 || x >= 1.0) return 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        if (x < edges[i + 1]) return weights[i] / (edges[i + 1] - edges[i]);
    return 0.0;
}

void Marginal::sample(std::mt19937_64& rng, double* out) const {
    if (kind == Kind::piecewise01) {
        out[0] = quantile(bits_to_u01(rng()));
        return;
    }
    double n2 = 0.0;
    std::normal_distribution<double> g;
    for (int i = 0; i < dim; ++i) {
        out[i] = g(rng);
        n2 += out[i] * out[i];
    }
    double inv = 1.0 / std::sqrt(n2);
    for (int i = 0; i < dim; ++i) out[i] *= inv;
}

void Marginal::sample_counter(std::uint64_t seed, std::uint64_t k, double* out) const {
    if (kind == Kind::piecewise01) {
        out[0] = quantile(counter_u01(seed, k));
        return;
    }
    double n2 = 0.0;
    for (int i = 0; i < dim; ++i) {
        out[i] = counter_gauss(seed, k * static_cast<std::uint64_t>(dim) + i);
        n2 += out[i] * out[i];
    }
    double inv = 1.0 / std::sqrt(n2);
    for (int i = 0; i < dim; ++i) out[i] *= inv;
}

}  // namespace alrates
