#pragma once
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "alrates/hypothesis.hpp"
#include "alrates/marginal.hpp"

namespace alrates {

// A measurable subset of the instance space. One-dimensional regions are
// unions of at most kMaxPieces disjoint half-open intervals [lo, hi);
// everything else is represented by a membership test.
struct Region {
    enum class Kind { empty, interval_union, membership, all };
    static constexpr std::size_t kMaxPieces = 16;

    Kind kind = Kind::empty;
    std::vector<std::pair<double, double>> pieces;  // sorted, disjoint [lo,hi)
    std::function<bool(PointView)> member;

    static Region empty_region() { return Region{}; }
    static Region everything() { return Region{Kind::all, {}, {}}; }
    static Region from_pieces(std::vector<std::pair<double, double>> raw);
    static Region from_membership(std::function<bool(PointView)> f);

    bool contains1(double x) const;
    bool contains(PointView x) const;
    bool is_empty() const { return kind == Kind::empty; }
};

// Exact mass for interval unions under a 1-D marginal (and the trivial
// empty/all cases under any marginal).
double region_mass(const Region& r, const Marginal& m);

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

// Monte Carlo mass with a counter-based sampler: the parallel kernel and the
// serial reference produce bit-identical results for the same seed.
McEstimate region_mass_mc(const Region& r, const Marginal& m, std::uint64_t n,
                          std::uint64_t seed);
McEstimate region_mass_mc_serial(const Region& r, const Marginal& m, std::uint64_t n,
                                 std::uint64_t seed);

}  // namespace alrates
