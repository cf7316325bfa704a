#pragma once
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alrates/hypothesis.hpp"
#include "alrates/marginal.hpp"

namespace alrates {

struct TsybakovTag {
    double kappa = 1.0;  // exponent, >= 1
    double mu = 1.0;     // certified leading constant
};

// Documentation-grade entropy label; carried but never asserted.
struct EntropyTag {
    double alpha = 0.0;
    double rho = 0.0;
};

// A synthetic joint distribution D_XY: marginal on X plus posterior
// eta(x) = P(Y=+1 | X=x), with the Bayes classifier and error rates known
// in closed form.
class NoiseProblem {
  public:
    enum class Kind {
        threshold_noiseless,   // eta = 1[x >= z*]
        threshold_bounded,     // eta = 1/2 + c sign(x - z*)
        threshold_polynomial,  // eta = 1/2 + (1/2) sign(x - z*) |x - z*|^(1/alpha)
        interval_bounded       // eta = 1/2 + c inside [a*,b*], 1/2 - c outside
    };

    Kind kind;
    Marginal marginal = Marginal::uniform01();
    double z_star = 0.5;
    double alpha = 1.0;     // polynomial flavor
    double c_margin = 0.0;  // bounded flavors
    double a_star = 0.0, b_star = 0.0;

    double eta(double x) const;
    double eta_integral(double lo, double hi) const;  // integral of eta over [lo,hi)

    Hypothesis bayes() const;
    double nu_star() const;  // Bayes error rate

    // er(h) = P(h(X) != Y), exact via closed-form integrals for 1-D classes.
    double true_error(const Hypothesis& h) const;

    // nu = inf over C of er(h); closed form where known, dense-grid certified.
    double class_noise_rate(const HypothesisClass& C) const;

    std::optional<TsybakovTag> tsybakov;
    std::optional<EntropyTag> entropy_tag;

    // Dense-grid certification of the Tsybakov tag for the threshold class:
    // finds the smallest mu with diam(eps;C) <= mu eps^(1/kappa) on the dyadic
    // eps in {2^-1..2^-10} and stores it.
    void certify_tsybakov(std::size_t grid = 100000);

    std::string to_config() const;
    static NoiseProblem from_config(const std::string& json_text);
};

NoiseProblem make_noiseless_threshold(double z_star);
NoiseProblem make_bounded_threshold(double c_margin, double z_star);
NoiseProblem make_polynomial_threshold(double alpha, double z_star);
NoiseProblem make_bounded_interval(double c_margin, double a_star, double b_star);

// Spec'd constructor: flavor "polynomial" uses alpha, "bounded" uses c_margin.
NoiseProblem make_tsybakov_threshold(double alpha_or_c, double z_star, bool bounded_flavor);

double true_error(const Hypothesis& h, const NoiseProblem& p);

// Hull of {z in [lo0,hi0] : er(h_z) <= level}. er(h_z) is monotone between
// the problem's breakpoints, so the boundary is found by bisection.
struct SublevelHull {
    bool any = false;
    double lo = 0.0, hi = 0.0;
};
SublevelHull threshold_error_sublevel(const NoiseProblem& p, double level, double lo0,
                                      double hi0);

// An i.i.d. stream (X_i, Y_i) from a NoiseProblem with a label budget.
// X values are free; labels are revealed one at a time and counted against
// the budget. Repeat queries for an already-revealed index are free.
class LabeledStream {
  public:
    LabeledStream(const NoiseProblem& p, std::uint64_t seed, std::uint64_t budget);
    static LabeledStream from_points(PointBuffer xs, std::vector<Label> ys,
                                     std::uint64_t budget);

    std::size_t dim() const { return xs_.dim(); }
    // 1-based stream access; materializes the prefix on demand.
    PointView x(std::uint64_t i);
    double x1(std::uint64_t i);
    Label query_label(std::uint64_t i);
    bool revealed(std::uint64_t i) const;

    std::uint64_t labels_used() const { return used_; }
    std::uint64_t budget() const { return budget_; }
    std::uint64_t materialized() const { return xs_.size(); }
    std::uint64_t seed() const { return seed_; }
    bool finite() const { return finite_; }  // explicit-points stream
    std::uint64_t finite_size() const { return finite_ ? xs_.size() : 0; }

  private:
    LabeledStream(std::size_t dim, std::uint64_t budget);  // explicit-points backing
    void materialize(std::uint64_t upto);

    const NoiseProblem* problem_ = nullptr;
    std::uint64_t seed_ = 0;
    std::uint64_t budget_ = 0;
    std::uint64_t used_ = 0;
    bool finite_ = false;
    std::mt19937_64 rng_;
    PointBuffer xs_;
    std::vector<Label> ys_;
    std::vector<char> revealed_;
};

struct BudgetExhausted : std::runtime_error {
    explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

// er_S against stream points; 0 on empty S by convention.
double empirical_error_on(const Hypothesis& h, std::span<const IndexedLabel> S,
                          LabeledStream& stream);

}  // namespace alrates
