#include <stdexcept>

#include "alrates/noise.hpp"
#include "alrates/rng.hpp"

namespace alrates {

LabeledStream::LabeledStream(const NoiseProblem& p, std::uint64_t seed, std::uint64_t budget)
    : problem_(&p), seed_(seed), budget_(budget), rng_(seed), xs_(1) {}

LabeledStream LabeledStream::from_points(PointBuffer xs, std::vector<Label> ys,
                                         std::uint64_t budget) {
    if (xs.size() != ys.size()) throw std::invalid_argument("points/labels size mismatch");
    LabeledStream s(xs.dim(), budget);
    s.xs_ = std::move(xs);
    s.ys_ = std::move(ys);
    s.revealed_.assign(s.ys_.size(), 0);
    return s;
}

LabeledStream::LabeledStream(std::size_t dim, std::uint64_t budget)
    : seed_(0), budget_(budget), finite_(true), rng_(0), xs_(dim) {}

void LabeledStream::materialize(std::uint64_t upto) {
    if (finite_) {
        if (upto > xs_.size()) throw std::out_of_range("finite stream exhausted");
        return;
    }
    while (xs_.size() < upto) {
        double buf[8];
        problem_->marginal.sample(rng_, buf);
        double u = bits_to_u01(rng_());
        xs_.push_back(PointView(buf, problem_->marginal.dim));
        double e = problem_->eta(buf[0]);
        ys_.push_back(u < e ? +1 : -1);
        revealed_.push_back(0);
    }
}

PointView LabeledStream::x(std::uint64_t i) {
    if (i == 0) throw std::out_of_range("stream indices are 1-based");
    materialize(i);
    return xs_[i - 1];
}

double LabeledStream::x1(std::uint64_t i) { return x(i)[0]; }

Label LabeledStream::query_label(std::uint64_t i) {
    if (i == 0) throw std::out_of_range("stream indices are 1-based");
    materialize(i);
    if (!revealed_[i - 1]) {
        if (used_ >= budget_) throw BudgetExhausted("label budget exhausted");
        revealed_[i - 1] = 1;
        ++used_;
    }
    return ys_[i - 1];
}

bool LabeledStream::revealed(std::uint64_t i) const {
    return i >= 1 && i <= revealed_.size() && revealed_[i - 1];
}

double empirical_error_on(const Hypothesis& h, std::span<const IndexedLabel> S,
                          LabeledStream& stream) {
    if (S.empty()) return 0.0;
    std::size_t mistakes = 0;
    for (const auto& [i, y] : S)
        if (predict(h, stream.x(i)) != y) ++mistakes;
    return static_cast<double>(mistakes) / static_cast<double>(S.size());
}

}  // namespace alrates
