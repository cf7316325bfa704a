#pragma once
#include <cstdint>
#include <span>
#include <vector>

#include "alrates/bounds.hpp"
#include "alrates/hypothesis.hpp"
#include "alrates/noise.hpp"

namespace alrates {

// Sorted labeled point set with the prefix sums that drive exact ERM and
// empirical-sublevel sup queries for the two 1-D families.
//
// Cell convention for k sorted points x_0 < ... < x_{k-1}:
//   threshold / left boundary a: cell j <=> parameter in (x_{j-1}, x_j]
//   right boundary b:            cell j <=> parameter in [x_{j-1}, x_j)
// Either way, cell j splits the points into a prefix [0,j) and suffix [j,k).
//
// Interval error decomposes as  er_count(jA, jB) = plus_tot + eL(jA) + eR(jB);
// threshold error is  thr_err(j) = minus_tot + eL(j).
struct CellKernel {
    int k = 0;
    std::vector<double> xs;
    std::vector<int> plus, minus, xisum;  // prefix arrays, size k+1
    int plus_tot = 0, minus_tot = 0;

    void build(std::span<const IndexedLabel> pts, LabeledStream& stream,
               const RademacherDraw* draw = nullptr);

    int eL(int j) const { return plus[j] - minus[j]; }
    int eR(int j) const { return minus[j] - plus[j]; }
    int thr_err(int j) const { return plus[j] + minus_tot - minus[j]; }

    // Cells whose parameter range intersects (z_lo, z_hi]; empty if lo > hi.
    int first_cell(double z_lo_exclusive) const;  // #{x_i <= z_lo}
    int last_cell(double z_hi_inclusive) const;   // #{x_i < z_hi}

    // Leftmost argmin of f(j) over [lo..hi]; O(hi-lo) scan.
    template <class F>
    std::pair<int, int> scan_min(int lo, int hi, F f) const {
        int best = f(lo), cell = lo;
        for (int j = lo + 1; j <= hi; ++j) {
            int v = f(j);
            if (v < best) {
                best = v;
                cell = j;
            }
        }
        return {best, cell};
    }

    // Range-min with leftmost argmin over precomputed tables (built on demand).
    struct MinTable {
        std::vector<std::vector<std::pair<int, int>>> rows;  // (value, cell)
        std::pair<int, int> query(int lo, int hi) const;
        bool built() const { return !rows.empty(); }
    };
    void build_thr_table();
    void build_side_tables();
    std::pair<int, int> min_thr(int lo, int hi) const { return thr_tab_.query(lo, hi); }
    std::pair<int, int> min_eL(int lo, int hi) const { return eL_tab_.query(lo, hi); }
    std::pair<int, int> min_eR(int lo, int hi) const { return eR_tab_.query(lo, hi); }

  private:
    static MinTable build_table(int n, const std::vector<int>& vals);
    MinTable thr_tab_, eL_tab_, eR_tab_;
};

// L-derived parameter constraints for the two families.
struct ThresholdConstraint {
    double z_lo = 0.0;  // exclusive
    double z_hi = 1.0;  // inclusive
    bool feasible = true;
    void add(double x, Label y);
};

struct IntervalConstraint {
    bool has_pos = false;
    double min_pos = 1.0, max_pos = 0.0;
    double neg_left = 0.0;   // largest negative below min_pos (exclusive bound for a)
    double neg_right = 1.0;  // smallest negative above max_pos (exclusive bound for b)
    std::vector<double> negatives;  // kept sorted, for the no-positive phase
    bool feasible = true;
    void add(double x, Label y);
};

}  // namespace alrates
