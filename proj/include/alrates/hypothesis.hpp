#pragma once
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace alrates {

using Label = int;  // -1 or +1
using PointView = std::span<const double>;

// (stream index, label) pair; indices are 1-based positions in the unlabeled
// sequence X_1, X_2, ...
struct IndexedLabel {
    std::uint64_t index;
    Label y;
};

// Flat row-major storage for points of a fixed dimension.
class PointBuffer {
  public:
    explicit PointBuffer(std::size_t dim = 1) : dim_(dim) {}
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return dim_ ? data_.size() / dim_ : 0; }
    PointView operator[](std::size_t row) const {
        return PointView(data_.data() + row * dim_, dim_);
    }
    void push_back(PointView x) { data_.insert(data_.end(), x.begin(), x.end()); }
    void push_back1(double x) { data_.push_back(x); }

  private:
    std::size_t dim_;
    std::vector<double> data_;
};

enum class ClassKind { threshold, interval, sphere_halfspace };

// A single binary classifier. Parameters:
//   threshold:        {z},   +1 iff x >= z
//   interval:         {a,b}, +1 iff a <= x <= b, with 0 < a < b < 1
//   sphere_halfspace: unit normal w, +1 iff w.x >= 0
struct Hypothesis {
    ClassKind kind;
    std::vector<double> params;

    static Hypothesis threshold(double z);
    static Hypothesis interval(double a, double b);
    static Hypothesis halfspace(std::vector<double> w);

    double z() const { return params[0]; }
    double a() const { return params[0]; }
    double b() const { return params[1]; }

    std::string describe() const;
    bool operator==(const Hypothesis& o) const = default;
};

Label predict(const Hypothesis& h, PointView x);
Label predict1(const Hypothesis& h, double x);  // 1-D fast path

// Fraction of (index,label) pairs in S that disagree with h; 0 on empty S.
double empirical_error(const Hypothesis& h, std::span<const IndexedLabel> S,
                       const PointBuffer& xs);

// A hypothesis class: a full parametric family, or a finite grid of members
// of one (or mixed) parametric kinds.
struct HypothesisClass {
    ClassKind kind;
    int vc_dim = 1;
    int ambient_dim = 1;
    std::vector<Hypothesis> members;  // nonempty => finite grid class

    bool is_grid() const { return !members.empty(); }

    // ln S(C,m). Exact for thresholds (m+1) and intervals
    // (m(m-1)/2 + m + 1); (em/d)^d fallback otherwise, and never more
    // than ln|C| for grid classes.
    double log_shatter(std::uint64_t m) const;

    static HypothesisClass thresholds();
    static HypothesisClass intervals();
    static HypothesisClass sphere_halfspaces(int d);
    static HypothesisClass threshold_grid(std::size_t n);
    static HypothesisClass interval_grid(std::size_t per_axis);
    static HypothesisClass from_members(std::vector<Hypothesis> members, int vc_dim,
                                        int ambient_dim = 1);
};

}  // namespace alrates
