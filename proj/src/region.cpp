#include "alrates/region.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "alrates/rng.hpp"

namespace alrates {

Region Region::from_pieces(std::vector<std::pair<double, double>> raw) {
    std::vector<std::pair<double, double>> ps;
    for (auto& [lo, hi] : raw)
        if (hi > lo) ps.emplace_back(lo, hi);
    std::sort(ps.begin(), ps.end());
    std::vector<std::pair<double, double>> merged;
    for (auto& p : ps) {
        if (!merged.empty() && p.first <= merged.back().second)
            merged.back().second = std::max(merged.back().second, p.second);
        else
            merged.push_back(p);
    }
    if (merged.empty()) return Region{};
    if (merged.size() > kMaxPieces)
        throw std::invalid_argument("region exceeds the piece cap; representation bug");
    return Region{Kind::interval_union, std::move(merged), {}};
}

Region Region::from_membership(std::function<bool(PointView)> f) {
    return Region{Kind::membership, {}, std::move(f)};
}

bool Region::contains1(double x) const {
    switch (kind) {
        case Kind::empty: return false;
        case Kind::all: return true;
        case Kind::interval_union: {
            auto it = std::upper_bound(pieces.begin(), pieces.end(), x,
                                       [](double v, const auto& p) { return v < p.first; });
            if (it == pieces.begin()) return false;
            --it;
            return x >= it->first && x < it->second;
        }
        case Kind::membership: {
            double v = x;
            return member(PointView(&v, 1));
        }
    }
    return false;
}

bool Region::contains(PointView x) const {
    if (kind == Kind::membership) return member(x);
    if (x.size() == 1) return contains1(x[0]);
    switch (kind) {
        case Kind::empty: return false;
        case Kind::all: return true;
        default: throw std::invalid_argument("interval-union region is one-dimensional");
    }
}

double region_mass(const Region& r, const Marginal& m) {
    switch (r.kind) {
        case Region::Kind::empty: return 0.0;
        case Region::Kind::all: return 1.0;
        case Region::Kind::interval_union: {
            double acc = 0.0;
            for (auto& [lo, hi] : r.pieces) acc += m.interval_mass(lo, hi);
            return acc;
        }
        case Region::Kind::membership:
            throw std::invalid_argument("membership region has no exact mass; use MC");
    }
    return 0.0;
}

namespace {

McEstimate finish(std::uint64_t hits, std::uint64_t n) {
    double p = static_cast<double>(hits) / static_cast<double>(n);
    return McEstimate{p, std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n)), n};
}

}  // namespace

McEstimate region_mass_mc_serial(const Region& r, const Marginal& m, std::uint64_t n,
                                 std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("MC mass needs n > 0");
    std::vector<double> buf(m.dim);
    std::uint64_t hits = 0;
    for (std::uint64_t k = 0; k < n; ++k) {
        m.sample_counter(seed, k, buf.data());
        if (r.contains(PointView(buf.data(), buf.size()))) ++hits;
    }
    return finish(hits, n);
}

McEstimate region_mass_mc(const Region& r, const Marginal& m, std::uint64_t n,
                          std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("MC mass needs n > 0");
    std::int64_t sn = static_cast<std::int64_t>(n);
    std::uint64_t hits = 0;
#pragma omp parallel reduction(+ : hits)
    {
        std::vector<double> buf(m.dim);
#pragma omp for schedule(static)
        for (std::int64_t k = 0; k < sn; ++k) {
            m.sample_counter(seed, static_cast<std::uint64_t>(k), buf.data());
            if (r.contains(PointView(buf.data(), buf.size()))) ++hits;
        }
    }
    return finish(hits, n);
}

}  // namespace alrates
