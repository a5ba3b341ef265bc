#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mbsde {

inline constexpr double kZ95 = 1.959964;

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    long n_outer = 0;
    long n_inner = 0;
    std::uint64_t seed = 0;

    static McEstimate from_moments(double sum, double sum_sq, long n, long n_inner,
                                   std::uint64_t seed) {
        if (n < 2) throw std::invalid_argument("McEstimate: need at least 2 samples");
        McEstimate e;
        e.value = sum / static_cast<double>(n);
        const double var = std::max(0.0, (sum_sq - sum * e.value) / static_cast<double>(n - 1));
        e.std_error = std::sqrt(var / static_cast<double>(n));
        e.ci_low = e.value - kZ95 * e.std_error;
        e.ci_high = e.value + kZ95 * e.std_error;
        e.n_outer = n;
        e.n_inner = n_inner;
        e.seed = seed;
        return e;
    }

    bool covers(double x) const { return x >= ci_low && x <= ci_high; }
    double half_width() const { return kZ95 * std_error; }
};

// Per-block partial moments combined by an ordered pairwise tree, so the
// result does not depend on how blocks were scheduled across threads.
struct BlockMoments {
    std::vector<double> sum;
    std::vector<double> sum_sq;

    explicit BlockMoments(int n_blocks) : sum(n_blocks, 0.0), sum_sq(n_blocks, 0.0) {}

    void combine(double& total, double& total_sq) const {
        std::vector<double> a = sum, b = sum_sq;
        std::size_t n = a.size();
        while (n > 1) {
            const std::size_t half = (n + 1) / 2;
            for (std::size_t i = 0; i + half < n; ++i) {
                a[i] += a[i + half];
                b[i] += b[i + half];
            }
            n = half;
        }
        total = a.empty() ? 0.0 : a[0];
        total_sq = b.empty() ? 0.0 : b[0];
    }
};

} // namespace mbsde
