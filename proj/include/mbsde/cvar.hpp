#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace mbsde {

struct CvarResult {
    double cvar = 0.0;
    double minimizer_x = 0.0;  // attaining point of the variational formula, a VaR-level quantile
};

// Empirical CVaR via the Rockafellar-Uryasev formula
//   CVaR = min_x [ mean((L_i - x)^+) / (1 - alpha) + x ].
// The objective is piecewise linear with kinks at the sample points, so the
// minimum over all real x is attained at an order statistic; scanning them
// with suffix sums is exact. Ties resolve to the smallest attaining x.
inline CvarResult empirical_cvar(std::span<const double> sample, double alpha) {
    if (sample.empty()) throw std::invalid_argument("empirical_cvar: sample is empty");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("empirical_cvar: alpha must lie in (0,1)");

    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();

    std::vector<double> suffix(n + 1, 0.0);  // suffix[k] = sum_{j >= k} sorted[j]
    for (std::size_t k = n; k-- > 0;) suffix[k] = suffix[k + 1] + sorted[k];

    const double scale = 1.0 / (static_cast<double>(n) * (1.0 - alpha));
    CvarResult best{std::numeric_limits<double>::infinity(), 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        const double x = sorted[k];
        const double excess = suffix[k + 1] - static_cast<double>(n - 1 - k) * x;
        const double obj = excess * scale + x;
        if (obj < best.cvar) {
            best.cvar = obj;
            best.minimizer_x = x;
        }
    }
    return best;
}

// |CVaR(A) - CVaR(B)| - mean|A_i - B_i| / (1 - alpha); always <= 0 on paired
// samples, which is the Lipschitz bound behind the well-posedness proof.
inline double cvar_lipschitz_gap(std::span<const double> sample_a,
                                 std::span<const double> sample_b, double alpha) {
    if (sample_a.size() != sample_b.size())
        throw std::invalid_argument("cvar_lipschitz_gap: samples must be paired");
    const double ca = empirical_cvar(sample_a, alpha).cvar;
    const double cb = empirical_cvar(sample_b, alpha).cvar;
    double mean_abs = 0.0;
    for (std::size_t i = 0; i < sample_a.size(); ++i) mean_abs += std::fabs(sample_a[i] - sample_b[i]);
    mean_abs /= static_cast<double>(sample_a.size());
    return std::fabs(ca - cb) - mean_abs / (1.0 - alpha);
}

} // namespace mbsde
