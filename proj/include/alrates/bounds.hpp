#pragma once
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "alrates/hypothesis.hpp"
#include "alrates/noise.hpp"

namespace alrates {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Constants of the localized-complexity bounds. The defaults are the proven
// values; experiment configs may override k_hat/k_tilde (they are far too
// conservative to trigger at desk scale).
struct BoundConfig {
    double k_hat = 752.0;
    double c_hat = 1.5;
    double k_tilde = 8272.0;
    double c_tilde = 3.0;
    int j_min = -30;              // dyadic floor 2^j_min for fixed-point scans
    double prefix_shrink = 2.0;   // prefix grid {ceil(|S|/shrink^k)} + |S|
    int tilde_outer = 50;         // fresh draws for the tilde expectation
    std::uint64_t rademacher_seed = 0x5bd1e995u;

    void validate() const;
};

// G(m, delta') from the classic VC deviation bound; +inf for m < d.
double vc_deviation(std::uint64_t m, double delta_prime, int d);

// UB/LB of Algorithm 1, on a precomputed empirical error.
double err_upper_bound(double emp_err, std::uint64_t m, double delta_prime, int d);
double err_lower_bound(double emp_err, std::uint64_t m, double delta_prime, int d);

// s_m(delta) = ln(20 m^2 log2(3m) / delta)
double s_m(std::uint64_t m, double delta);

// One shared sign sequence xi_i keyed by stream index; deterministic given
// the seed and safe for concurrent reads. Tests may pin explicit signs.
class RademacherDraw {
  public:
    explicit RademacherDraw(std::uint64_t seed) : seed_(seed) {}
    static RademacherDraw from_signs(std::vector<int> signs);
    int sign(std::uint64_t index) const;  // 1-based stream index

  private:
    std::uint64_t seed_ = 0;
    std::vector<int> signs_;
};

// R(f;S) = (1/|S|) sum xi_i f(X_i)
double rademacher_process(const std::function<double(PointView)>& f,
                          std::span<const IndexedLabel> S, const RademacherDraw& draw,
                          LabeledStream& stream);
double rademacher_process(const Hypothesis& h1, const Hypothesis& h2,
                          std::span<const IndexedLabel> S, const RademacherDraw& draw,
                          LabeledStream& stream);

// Shatter-coefficient threshold for the label-inference test of the
// disagreement-based stream algorithm: beta^2 + beta(sqrt(er1) + sqrt(er2)),
// beta_m = sqrt(4 ln(8 m (m+1) S(C,2m)^2 / delta) / m); +inf at m = 0.
double dhm_beta(std::uint64_t m, double delta, const HypothesisClass& C);
double dhm_threshold_shatter(std::uint64_t m, double delta, const HypothesisClass& C,
                             double er_hy, double er_hmy);

// --- data-dependent localized bound -------------------------------------

struct HatSup {
    double d_hat = 0.0;    // sup pairwise empirical disagreement over the eps-minimal set
    double phi_hat = 0.0;  // (1/2) sup Rademacher process over the same set
    double min_err = 0.0;  // min er_S over C[L]
};

// Exact sup computations over the eps-minimal empirical set
// {h in C[L] : er_S(h) - min er_S <= eps}, via induced labelings for 1-D
// parametric classes and member scans for grids.
HatSup hat_sup(double eps, std::span<const IndexedLabel> L, std::span<const IndexedLabel> S,
               const HypothesisClass& C, LabeledStream& stream, const RademacherDraw& draw);

double hat_U(double eps, double delta, std::span<const IndexedLabel> L,
             std::span<const IndexedLabel> S, const HypothesisClass& C, LabeledStream& stream,
             const RademacherDraw& draw, const BoundConfig& cfg);

struct HatBoundInfo {
    double value = kInf;
    int witness_j = 1;      // first failing dyadic level (value = 2^(witness_j+1) when interior)
    bool top_capped = false;  // even the top candidate failed; value capped at 1
    bool floor_hit = false;   // scan reached the dyadic floor
};

// Fixed-point excess-risk bound: the smallest dyadic eps = 2^j0 in
// [2^j_min, 1] such that for every level j >= j0, the minimum of hat_U over
// the index-prefix grid of (L,S) falls below 2^(j-4). +inf for empty S.
HatBoundInfo hat_bound_info(std::span<const IndexedLabel> S, double delta,
                            std::span<const IndexedLabel> L, const HypothesisClass& C,
                            LabeledStream& stream, const RademacherDraw& draw,
                            const BoundConfig& cfg);
double hat_bound(std::span<const IndexedLabel> S, double delta, std::span<const IndexedLabel> L,
                 const HypothesisClass& C, LabeledStream& stream, const RademacherDraw& draw,
                 const BoundConfig& cfg);

// --- distribution-dependent diagnostics ----------------------------------

struct TildePhi {
    double value = 0.0;
    double std_error = 0.0;
};

// phi_C(m, eps): expected sup over the true eps-minimal set of the
// difference of (true - empirical) errors, averaged over cfg.tilde_outer
// fresh draws; diagnostic grade, stderr recorded.
TildePhi tilde_phi(std::uint64_t m, double eps, const NoiseProblem& problem,
                   const HypothesisClass& C, const BoundConfig& cfg, std::uint64_t seed);

double tilde_U(std::uint64_t m, double eps, double delta, const NoiseProblem& problem,
               const HypothesisClass& C, const BoundConfig& cfg, std::uint64_t seed);

double tilde_bound(std::uint64_t m, double delta, const NoiseProblem& problem,
                   const HypothesisClass& C, const BoundConfig& cfg, std::uint64_t seed);

// Sample-size and radius diagnostics built from memoized tilde bounds on a
// geometric grid (conservative step-function interpolation).
std::uint64_t tilde_m(std::uint64_t n, double delta, const NoiseProblem& problem,
                      const HypothesisClass& C, const BoundConfig& cfg, std::uint64_t seed);
double r_coefficient(std::uint64_t n, double delta, const NoiseProblem& problem,
                     const HypothesisClass& C, const BoundConfig& cfg, std::uint64_t seed);

}  // namespace alrates
