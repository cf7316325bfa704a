#include "alrates/hypothesis.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace alrates {

Hypothesis Hypothesis::threshold(double z) {
    return Hypothesis{ClassKind::threshold, {z}};
}

Hypothesis Hypothesis::interval(double a, double b) {
    if (!(0.0 < a && a < b && b < 1.0))
        throw std::invalid_argument("interval hypothesis requires 0 < a < b < 1");
    return Hypothesis{ClassKind::interval, {a, b}};
}

Hypothesis Hypothesis::halfspace(std::vector<double> w) {
    double n2 = 0.0;
    for (double v : w) n2 += v * v;
    if (std::fabs(std::sqrt(n2) - 1.0) > 1e-12)
        throw std::invalid_argument("halfspace normal must have unit norm within 1e-12");
    return Hypothesis{ClassKind::sphere_halfspace, std::move(w)};
}

std::string Hypothesis::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind) {
        case ClassKind::threshold: os << "threshold(" << z() << ")"; break;
        case ClassKind::interval: os << "interval(" << a() << "," << b() << ")"; break;
        case ClassKind::sphere_halfspace:
            os << "halfspace(";
            for (std::size_t i = 0; i < params.size(); ++i) os << (i ? "," : "") << params[i];
            os << ")";
            break;
    }
    return os.str();
}

Label predict1(const Hypothesis& h, double x) {
    switch (h.kind) {
        case ClassKind::threshold: return x >= h.z() ? +1 : -1;
        case ClassKind::interval: return (h.a() <= x && x <= h.b()) ? +1 : -1;
        default: throw std::invalid_argument("predict1: hypothesis is not one-dimensional");
    }
}

Label predict(const Hypothesis& h, PointView x) {
    if (h.kind == ClassKind::sphere_halfspace) {
        if (x.size() != h.params.size())
            throw std::invalid_argument("predict: point dimension does not match hypothesis");
        double dot = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) dot += h.params[i] * x[i];
        return dot >= 0.0 ? +1 : -1;
    }
    if (x.size() != 1)
        throw std::invalid_argument("predict: point dimension does not match hypothesis");
    return predict1(h, x[0]);
}

double empirical_error(const Hypothesis& h, std::span<const IndexedLabel> S,
                       const PointBuffer& xs) {
    if (S.empty()) return 0.0;  // er on the empty set is 0 by convention
    std::size_t mistakes = 0;
    for (const auto& [i, y] : S) {
        if (i == 0 || i > xs.size()) throw std::out_of_range("empirical_error: index outside stream");
        if (predict(h, xs[i - 1]) != y) ++mistakes;
    }
    return static_cast<double>(mistakes) / static_cast<double>(S.size());
}

double HypothesisClass::log_shatter(std::uint64_t m) const {
    if (m == 0) return 0.0;  // S(C,0) = 1
    double v;
    switch (kind) {
        case ClassKind::threshold:
            v = std::log(static_cast<double>(m) + 1.0);
            break;
        case ClassKind::interval: {
            double md = static_cast<double>(m);
            v = std::log(md * (md - 1.0) / 2.0 + md + 1.0);
            break;
        }
        default: {
            double d = vc_dim, md = static_cast<double>(m);
            v = (md >= d) ? d * std::log(std::exp(1.0) * md / d) : md * std::log(2.0);
            break;
        }
    }
    if (is_grid()) v = std::min(v, std::log(static_cast<double>(members.size())));
    return v;
}

HypothesisClass HypothesisClass::thresholds() {
    return HypothesisClass{ClassKind::threshold, 1, 1, {}};
}

HypothesisClass HypothesisClass::intervals() {
    return HypothesisClass{ClassKind::interval, 2, 1, {}};
}

HypothesisClass HypothesisClass::sphere_halfspaces(int d) {
    if (d < 2) throw std::invalid_argument("sphere halfspaces need d >= 2");
    return HypothesisClass{ClassKind::sphere_halfspace, d, d, {}};
}

HypothesisClass HypothesisClass::threshold_grid(std::size_t n) {
    std::vector<Hypothesis> mem;
    mem.reserve(n);
    for (std::size_t k = 1; k <= n; ++k)
        mem.push_back(Hypothesis::threshold(static_cast<double>(k) / (n + 1)));
    return HypothesisClass{ClassKind::threshold, 1, 1, std::move(mem)};
}

HypothesisClass HypothesisClass::interval_grid(std::size_t per_axis) {
    std::vector<Hypothesis> mem;
    for (std::size_t i = 1; i <= per_axis; ++i)
        for (std::size_t j = i + 1; j <= per_axis; ++j)
            mem.push_back(Hypothesis::interval(static_cast<double>(i) / (per_axis + 1),
                                               static_cast<double>(j) / (per_axis + 1)));
    return HypothesisClass{ClassKind::interval, 2, 1, std::move(mem)};
}

HypothesisClass HypothesisClass::from_members(std::vector<Hypothesis> members, int vc_dim,
                                              int ambient_dim) {
    if (members.empty()) throw std::invalid_argument("grid class needs at least one member");
    ClassKind k = members.front().kind;
    return HypothesisClass{k, vc_dim, ambient_dim, std::move(members)};
}

}  // namespace alrates
