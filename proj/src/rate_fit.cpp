#include "alrates/rate_fit.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "alrates/rng.hpp"

namespace alrates {

namespace {

struct LsFit {
    double slope = 0.0, intercept = 0.0, r2 = 0.0;
};

LsFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LsFit f;
    double denom = n * sxx - sx * sx;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0, ss_tot = 0, ybar = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double e = y[i] - (f.slope * x[i] + f.intercept);
        ss_res += e * e;
        ss_tot += (y[i] - ybar) * (y[i] - ybar);
    }
    f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

RateFit fit_rate(const LearningCurve& curve, RateFit::Model model, int bootstrap_rounds,
                 std::uint64_t bootstrap_seed) {
    RateFit fit;
    fit.model = model;

    // group ok-records by budget
    std::map<std::uint64_t, std::vector<double>> groups;
    for (const auto& r : curve.records)
        if (r.ok) groups[r.budget].push_back(r.excess_error);

    std::vector<double> xs, ys;
    for (auto& [budget, vals] : groups) {
        double med = median_of(vals);
        if (med <= kExcessFloor) continue;  // below the numerical floor
        fit.budgets_used.push_back(budget);
        double bd = static_cast<double>(budget);
        xs.push_back(model == RateFit::Model::power_law ? std::log(bd) : bd);
        ys.push_back(std::log(med));
    }
    if (xs.size() < 3) {
        fit.note = "fewer than 3 budgets above the excess-error floor";
        return fit;
    }
    LsFit ls = least_squares(xs, ys);
    fit.slope = ls.slope;
    fit.intercept = ls.intercept;
    fit.r2 = ls.r2;
    fit.ok = true;

    // bootstrap over trials within each used budget
    std::vector<double> slopes;
    slopes.reserve(bootstrap_rounds);
    for (int b = 0; b < bootstrap_rounds; ++b) {
        std::vector<double> bx, by;
        bool usable = true;
        for (std::size_t gi = 0; gi < fit.budgets_used.size() && usable; ++gi) {
            const auto& vals = groups[fit.budgets_used[gi]];
            std::vector<double> sample(vals.size());
            for (std::size_t k = 0; k < vals.size(); ++k) {
                std::uint64_t pick =
                    mix64(bootstrap_seed, (static_cast<std::uint64_t>(b) << 32) ^ (gi << 20) ^ k) %
                    vals.size();
                sample[k] = vals[pick];
            }
            double med = median_of(sample);
            if (med <= kExcessFloor) {
                usable = false;
                break;
            }
            double bd = static_cast<double>(fit.budgets_used[gi]);
            bx.push_back(model == RateFit::Model::power_law ? std::log(bd) : bd);
            by.push_back(std::log(med));
        }
        if (usable && bx.size() >= 3) slopes.push_back(least_squares(bx, by).slope);
    }
    if (slopes.size() >= 20) {
        std::sort(slopes.begin(), slopes.end());
        auto at = [&](double q) {
            double pos = q * (slopes.size() - 1);
            std::size_t i = static_cast<std::size_t>(pos);
            double f = pos - i;
            return i + 1 < slopes.size() ? slopes[i] * (1 - f) + slopes[i + 1] * f : slopes[i];
        };
        fit.boot_lo = at(0.025);
        fit.boot_hi = at(0.975);
    } else {
        fit.boot_lo = fit.boot_hi = fit.slope;
    }
    return fit;
}

}  // namespace alrates
