#include "alrates/erm_kernel.hpp"

#include <algorithm>
#include <numeric>

namespace alrates {

void CellKernel::build(std::span<const IndexedLabel> pts, LabeledStream& stream,
                       const RademacherDraw* draw) {
    k = static_cast<int>(pts.size());
    std::vector<int> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> raw(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) raw[i] = stream.x1(pts[i].index);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return raw[a] < raw[b]; });

    xs.resize(k);
    plus.assign(k + 1, 0);
    minus.assign(k + 1, 0);
    xisum.assign(k + 1, 0);
    plus_tot = minus_tot = 0;
    for (int j = 0; j < k; ++j) {
        const auto& pt = pts[order[j]];
        xs[j] = raw[order[j]];
        plus[j + 1] = plus[j] + (pt.y > 0);
        minus[j + 1] = minus[j] + (pt.y < 0);
        xisum[j + 1] = xisum[j] + (draw ? draw->sign(pt.index) : 0);
    }
    plus_tot = plus[k];
    minus_tot = minus[k];
    thr_tab_ = MinTable{};
    eL_tab_ = MinTable{};
    eR_tab_ = MinTable{};
}

int CellKernel::first_cell(double z_lo_exclusive) const {
    return static_cast<int>(std::upper_bound(xs.begin(), xs.end(), z_lo_exclusive) - xs.begin());
}

int CellKernel::last_cell(double z_hi_inclusive) const {
    return static_cast<int>(std::lower_bound(xs.begin(), xs.end(), z_hi_inclusive) - xs.begin());
}

CellKernel::MinTable CellKernel::build_table(int n, const std::vector<int>& vals) {
    MinTable t;
    if (n <= 0) return t;
    int levels = 1;
    while ((1 << levels) <= n) ++levels;
    t.rows.resize(levels);
    t.rows[0].resize(n);
    for (int i = 0; i < n; ++i) t.rows[0][i] = {vals[i], i};
    for (int l = 1; l < levels; ++l) {
        int len = 1 << l;
        t.rows[l].resize(n - len + 1);
        for (int i = 0; i + len <= n; ++i) {
            auto a = t.rows[l - 1][i], b = t.rows[l - 1][i + len / 2];
            t.rows[l][i] = (b.first < a.first) ? b : a;  // leftmost wins ties
        }
    }
    return t;
}

std::pair<int, int> CellKernel::MinTable::query(int lo, int hi) const {
    int len = hi - lo + 1;
    int l = 0;
    while ((2 << l) <= len) ++l;
    auto a = rows[l][lo], b = rows[l][hi - (1 << l) + 1];
    if (a.first < b.first) return a;
    if (b.first < a.first) return b;
    return a.second <= b.second ? a : b;
}

void CellKernel::build_thr_table() {
    if (thr_tab_.built()) return;
    std::vector<int> v(k + 1);
    for (int j = 0; j <= k; ++j) v[j] = thr_err(j);
    thr_tab_ = build_table(k + 1, v);
}

void CellKernel::build_side_tables() {
    if (eL_tab_.built()) return;
    std::vector<int> a(k + 1), b(k + 1);
    for (int j = 0; j <= k; ++j) {
        a[j] = eL(j);
        b[j] = eR(j);
    }
    eL_tab_ = build_table(k + 1, a);
    eR_tab_ = build_table(k + 1, b);
}

void ThresholdConstraint::add(double x, Label y) {
    if (y > 0) {
        z_hi = std::min(z_hi, x);
    } else {
        z_lo = std::max(z_lo, x);
    }
    if (z_lo >= z_hi) feasible = false;
}

void IntervalConstraint::add(double x, Label y) {
    if (y > 0) {
        if (!has_pos) {
            has_pos = true;
            min_pos = max_pos = x;
            // fold accumulated negatives into the side bounds
            for (double nx : negatives) {
                if (nx < x)
                    neg_left = std::max(neg_left, nx);
                else if (nx > x)
                    neg_right = std::min(neg_right, nx);
                else
                    feasible = false;
            }
        } else {
            min_pos = std::min(min_pos, x);
            max_pos = std::max(max_pos, x);
        }
        if (neg_left >= min_pos || neg_right <= max_pos) feasible = false;
    } else {
        if (has_pos) {
            if (x >= min_pos && x <= max_pos)
                feasible = false;
            else if (x < min_pos)
                neg_left = std::max(neg_left, x);
            else
                neg_right = std::min(neg_right, x);
        } else {
            negatives.insert(std::upper_bound(negatives.begin(), negatives.end(), x), x);
        }
    }
}

}  // namespace alrates
