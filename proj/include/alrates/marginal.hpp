#pragma once
#include <cstdint>
#include <random>
#include <vector>

#include "alrates/hypothesis.hpp"

namespace alrates {

// Marginal distribution of X. Either a piecewise-uniform density on [0,1]
// (covers uniform[0,1] and finite mixtures of uniforms) or the uniform
// distribution on the unit sphere in R^d.
struct Marginal {
    enum class Kind { piecewise01, sphere };
    Kind kind = Kind::piecewise01;
    int dim = 1;
    // piecewise: edges e_0=0 < e_1 < ... < e_k=1, weights w_i = mass of piece i
    std::vector<double> edges{0.0, 1.0};
    std::vector<double> weights{1.0};

    static Marginal uniform01();
    static Marginal piecewise(std::vector<double> edges, std::vector<double> weights);
    static Marginal sphere(int d);

    bool is_uniform01() const;

    // 1-D only
    double cdf(double x) const;
    double quantile(double p) const;
    double interval_mass(double lo, double hi) const;  // mass of [lo,hi)
    double density(double x) const;

    void sample(std::mt19937_64& rng, double* out) const;
    void sample_counter(std::uint64_t seed, std::uint64_t k, double* out) const;
};

}  // namespace alrates
