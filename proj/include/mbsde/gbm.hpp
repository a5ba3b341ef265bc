#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "mbsde/market.hpp"
#include "mbsde/rng.hpp"

namespace mbsde {

// Simulated paths, laid out path-major: data[(p * n_times + k) * d + i].
struct PathArray {
    int n_paths = 0;
    int n_times = 0;
    int d = 0;
    std::vector<double> data;

    double at(int path, int time_idx, int asset) const {
        return data[(static_cast<std::size_t>(path) * n_times + time_idx) * d + asset];
    }
};

// Exact log-Euler sampling of the constant-coefficient GBM market on the
// given time grid (times[0] must be 0). Paths are generated in fixed-size
// blocks with one RngStream per block, so the output is identical for any
// thread count.
inline PathArray simulate_gbm_paths(const MarketParams& market, std::span<const double> times,
                                    const RngStream& root, int n_paths) {
    const int d = market.dim();
    if (times.size() < 2 || times[0] != 0.0)
        throw std::invalid_argument("simulate_gbm_paths: times must start at 0 with >= 2 points");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (!(times[k] > times[k - 1]))
            throw std::invalid_argument("simulate_gbm_paths: times must be strictly increasing");
    if (n_paths < 1) throw std::invalid_argument("simulate_gbm_paths: need n_paths >= 1");

    const int n_times = static_cast<int>(times.size());
    PathArray out;
    out.n_paths = n_paths;
    out.n_times = n_times;
    out.d = d;
    out.data.resize(static_cast<std::size_t>(n_paths) * n_times * d);

    const auto var_diag = market.variance_diag();
    std::vector<double> log_s0(d), drift(d);
    for (int i = 0; i < d; ++i) {
        log_s0[i] = std::log(market.s0[i]);
        drift[i] = market.mu[i] - 0.5 * var_diag[i];
    }

    constexpr int kBlock = 1024;
    const int n_blocks = (n_paths + kBlock - 1) / kBlock;

#pragma omp parallel for schedule(dynamic)
    for (int b = 0; b < n_blocks; ++b) {
        RngStream rng(root.seed(), root.stream_id() + static_cast<std::uint64_t>(b));
        std::vector<double> g(d), x(d);
        const int lo = b * kBlock;
        const int hi = std::min(n_paths, lo + kBlock);
        for (int p = lo; p < hi; ++p) {
            double* path = &out.data[static_cast<std::size_t>(p) * n_times * d];
            for (int i = 0; i < d; ++i) {
                x[i] = log_s0[i];
                path[i] = market.s0[i];
            }
            for (int k = 1; k < n_times; ++k) {
                const double dt = times[k] - times[k - 1];
                const double sq = std::sqrt(dt);
                for (int i = 0; i < d; ++i) g[i] = rng.next_gaussian();
                double* row = path + static_cast<std::size_t>(k) * d;
                for (int i = 0; i < d; ++i) {
                    double diffusion = 0.0;
                    for (int j = 0; j < d; ++j) diffusion += market.sigma[i * d + j] * g[j];
                    x[i] += drift[i] * dt + sq * diffusion;
                    row[i] = std::exp(x[i]);
                }
            }
        }
    }
    return out;
}

} // namespace mbsde
