#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mbsde/market.hpp"
#include "mbsde/mc_stats.hpp"
#include "mbsde/payoff.hpp"
#include "mbsde/rng.hpp"

namespace mbsde {

struct BasketMcResult {
    McEstimate price;
    std::vector<McEstimate> deltas;  // dV/dS0_i (the Z_0 A_0 convention)
};

// Crude risk-neutral Monte Carlo for the basket call (one exact terminal
// step), with likelihood-ratio deltas
//   dV/dS0_i = E[ e^{-rT} (Phi(S_T) - Phi(S_0)) [sigma^{-T} G]_i / (S0_i sqrt(T)) ],
// the payoff-at-spot term entering as a control variate.
inline BasketMcResult basket_reference_mc(const MarketParams& market, const Payoff& payoff,
                                          double maturity, long n_paths, std::uint64_t seed,
                                          int block_size = 8192) {
    if (payoff.kind != PayoffKind::BasketCall)
        throw std::invalid_argument("basket_reference_mc: payoff must be a basket call");
    const int d = market.dim();
    if (payoff.dim() != d)
        throw std::invalid_argument("basket_reference_mc: payoff/market dimension mismatch");
    if (n_paths < 2) throw std::invalid_argument("basket_reference_mc: need n_paths >= 2");

    const auto var_diag = market.variance_diag();
    std::vector<double> drift(d), log_s0(d);
    for (int i = 0; i < d; ++i) {
        drift[i] = (market.r - 0.5 * var_diag[i]) * maturity;  // risk-neutral pricing, R ignored
        log_s0[i] = std::log(market.s0[i]);
    }
    // sigma^{-T} columns for the score, scaled by 1/(S0_i sqrt(T))
    std::vector<double> sigma_t(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) sigma_t[i * d + j] = market.sigma[j * d + i];
    const auto sigma_inv_t = linalg::invert_dense(sigma_t, d);
    const double disc = std::exp(-market.r * maturity);
    const double sqrt_t = std::sqrt(maturity);
    const double phi_s0 = evaluate(payoff, market.s0);

    const long block = std::max(1, block_size);
    const int n_blocks = static_cast<int>((n_paths + block - 1) / block);
    BlockMoments mp(n_blocks);
    std::vector<BlockMoments> md(d, BlockMoments(n_blocks));

#pragma omp parallel for schedule(dynamic)
    for (int b = 0; b < n_blocks; ++b) {
        RngStream rng(seed, static_cast<std::uint64_t>(b));
        const long lo = b * block;
        const long hi = std::min(n_paths, lo + block);
        std::vector<double> g(d), s(d), score(d);
        double sp = 0.0, spq = 0.0;
        std::vector<double> sd(d, 0.0), sdq(d, 0.0);
        for (long p = lo; p < hi; ++p) {
            for (int k = 0; k < d; ++k) g[k] = rng.next_gaussian();
            for (int i = 0; i < d; ++i) {
                double diffusion = 0.0;
                for (int k = 0; k < d; ++k) diffusion += market.sigma[i * d + k] * g[k];
                s[i] = std::exp(log_s0[i] + drift[i] + sqrt_t * diffusion);
            }
            const double pay = disc * evaluate(payoff, s);
            sp += pay;
            spq += pay * pay;
            const double centered = pay - disc * phi_s0;
            for (int i = 0; i < d; ++i) {
                double sc = 0.0;
                for (int k = 0; k < d; ++k) sc += sigma_inv_t[i * d + k] * g[k];
                const double delta_sample = centered * sc / (market.s0[i] * sqrt_t);
                sd[i] += delta_sample;
                sdq[i] += delta_sample * delta_sample;
            }
        }
        mp.sum[b] = sp;
        mp.sum_sq[b] = spq;
        for (int i = 0; i < d; ++i) {
            md[i].sum[b] = sd[i];
            md[i].sum_sq[b] = sdq[i];
        }
    }

    BasketMcResult out;
    double s1, s2;
    mp.combine(s1, s2);
    out.price = McEstimate::from_moments(s1, s2, n_paths, 1, seed);
    out.deltas.resize(d);
    for (int i = 0; i < d; ++i) {
        md[i].combine(s1, s2);
        out.deltas[i] = McEstimate::from_moments(s1, s2, n_paths, 1, seed);
    }
    return out;
}

} // namespace mbsde
