#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "mbsde/black_scholes.hpp"
#include "mbsde/market.hpp"
#include "mbsde/mc_stats.hpp"
#include "mbsde/payoff.hpp"
#include "mbsde/rng.hpp"

namespace mbsde {

// Likelihood-ratio estimator of Z_t^BS(s) with the payoff-at-s control
// variate inside:  E[ e^{-r(T-t)} (Phi(S_T) - Phi(s)) (W_T - W_t)/(T-t) ].
inline double lr_delta_inner(double s, double t, const MarketParams& market,
                             const Payoff& payoff, double maturity, RngStream rng, int n_inner) {
    if (market.dim() != 1) throw std::invalid_argument("lr_delta_inner: requires d = 1");
    if (!(t < maturity)) throw std::invalid_argument("lr_delta_inner: t must be before maturity");
    if (!(s > 0.0)) throw std::invalid_argument("lr_delta_inner: s must be positive");
    if (n_inner < 1) throw std::invalid_argument("lr_delta_inner: need n_inner >= 1");

    const double tau = maturity - t;
    const double sigma = market.vol1();
    const double drift = (market.r - 0.5 * sigma * sigma) * tau;
    const double vol_sq = sigma * std::sqrt(tau);
    const double phi_s = evaluate(payoff, s);
    double sum = 0.0;
    for (int n = 0; n < n_inner; ++n) {
        const double y = rng.next_gaussian();
        const double s_t = s * std::exp(drift + vol_sq * y);
        sum += (evaluate(payoff, s_t) - phi_s) * y;
    }
    return std::exp(-market.r * tau) * sum / (static_cast<double>(n_inner) * std::sqrt(tau));
}

struct NestedOptions {
    // U is drawn on [eps, T] with eps = u_floor_frac * T; the W_U / U weight
    // of the Z estimator has exploding variance at U = 0.
    double u_floor_frac = 1e-4;
    // Reproduces the displayed estimator variant that discounts the IM leg
    // at maturity instead of at U.
    bool discount_im_at_maturity = false;
    // Optional mean-preserving control variates on the payoff legs, using
    // the closed-form price and Z^BS at the spot. Off by default: the plain
    // estimator is the displayed one, its CI reflecting raw payoff noise.
    bool payoff_control_variate = false;
    int block_size = 4096;
};

struct NestedResult {
    McEstimate v0;
    McEstimate z0;  // reported on the Z_0 / (sigma S_0) scale
};

// Nested Monte Carlo for (V_0^L, Z_0^L): outer samples of (X, U), inner
// likelihood-ratio estimate of Z_U^BS, uniform-time randomization of the IM
// integral. Outer samples are partitioned into fixed blocks with one
// RngStream per block plus one per-sample inner stream, so estimates are
// bit-identical for any thread count and outer randomness is shared across
// different inner sizes.
inline NestedResult nested_estimate(const MarketParams& market, const ImParams& im,
                                    const Payoff& payoff, double maturity, long n_outer,
                                    int n_inner, std::uint64_t seed, NestedOptions opts = {}) {
    if (market.dim() != 1) throw std::invalid_argument("nested_estimate: requires d = 1");
    if (n_inner < 2) throw std::invalid_argument("nested_estimate: need n_inner >= 2");
    if (n_outer < 2) throw std::invalid_argument("nested_estimate: need n_outer >= 2");

    const double sigma = market.vol1();
    const double s0 = market.s0[0];
    const double r = market.r;
    const double t_cap = maturity;
    const double eps = opts.u_floor_frac * t_cap;
    const double span = t_cap - eps;
    const double disc_t = std::exp(-r * t_cap);
    const double sqrt_t = std::sqrt(t_cap);
    const double drift_t = (r - 0.5 * sigma * sigma) * t_cap;

    double cv_price = 0.0, cv_z = 0.0;
    if (opts.payoff_control_variate) {
        if (payoff.kind == PayoffKind::Butterfly) {
            const auto a = bs_price_delta(s0, payoff.strike - payoff.wing, r, sigma, t_cap,
                                          PayoffKind::Call);
            const auto b = bs_price_delta(s0, payoff.strike, r, sigma, t_cap, PayoffKind::Call);
            const auto c = bs_price_delta(s0, payoff.strike + payoff.wing, r, sigma, t_cap,
                                          PayoffKind::Call);
            cv_price = a.price - 2.0 * b.price + c.price;
        } else {
            cv_price = bs_price_delta(s0, payoff.strike, r, sigma, t_cap, payoff.kind).price;
        }
        cv_z = bs_delta_superposition(payoff, s0, 0.0, market, t_cap);
    }

    const long block = std::max(1, opts.block_size);
    const int n_blocks = static_cast<int>((n_outer + block - 1) / block);
    BlockMoments mv(n_blocks), mz(n_blocks);
    const std::uint64_t inner_stream_base = static_cast<std::uint64_t>(n_blocks);

#pragma omp parallel for schedule(dynamic)
    for (int b = 0; b < n_blocks; ++b) {
        RngStream outer(seed, static_cast<std::uint64_t>(b));
        const long lo = b * block;
        const long hi = std::min(n_outer, lo + block);
        double sv = 0.0, svq = 0.0, sz = 0.0, szq = 0.0;
        for (long mth = lo; mth < hi; ++mth) {
            const double u = eps + span * outer.next_uniform();
            const double x = outer.next_gaussian();
            const double w_t = sqrt_t * x;
            const double w_u = std::sqrt(u) * x;
            const double s_t = s0 * std::exp(drift_t + sigma * w_t);
            const double s_u = s0 * std::exp((r - 0.5 * sigma * sigma) * u + sigma * w_u);

            RngStream inner(seed, inner_stream_base + static_cast<std::uint64_t>(mth));
            const double z_hat =
                lr_delta_inner(s_u, u, market, payoff, t_cap, inner, n_inner);

            const double im_disc = opts.discount_im_at_maturity ? disc_t : std::exp(-r * u);
            const double im_leg = span * im_disc * im.spread * im.c_alpha * std::fabs(z_hat) *
                                  std::sqrt(std::min(u + im.horizon, t_cap) - u);
            const double pay = disc_t * evaluate(payoff, s_t);

            double v_sample = pay + im_leg;
            double z_sample = pay * w_t / t_cap + im_leg * w_u / u;
            if (opts.payoff_control_variate) {
                v_sample += cv_price - pay;
                z_sample += cv_z - pay * w_t / t_cap;
            }
            sv += v_sample;
            svq += v_sample * v_sample;
            sz += z_sample;
            szq += z_sample * z_sample;
        }
        mv.sum[b] = sv;
        mv.sum_sq[b] = svq;
        mz.sum[b] = sz;
        mz.sum_sq[b] = szq;
    }

    double sv, svq, sz, szq;
    mv.combine(sv, svq);
    mz.combine(sz, szq);
    NestedResult out;
    out.v0 = McEstimate::from_moments(sv, svq, n_outer, n_inner, seed);
    // table convention: Z_0 / (sigma S_0)
    const double scale = 1.0 / (sigma * s0);
    McEstimate z = McEstimate::from_moments(sz, szq, n_outer, n_inner, seed);
    z.value *= scale;
    z.std_error *= scale;
    z.ci_low = z.value - kZ95 * z.std_error;
    z.ci_high = z.value + kZ95 * z.std_error;
    out.z0 = z;
    return out;
}

inline McEstimate nested_v0(const MarketParams& market, const ImParams& im, const Payoff& payoff,
                            double maturity, long n_outer, int n_inner, std::uint64_t seed,
                            NestedOptions opts = {}) {
    return nested_estimate(market, im, payoff, maturity, n_outer, n_inner, seed, opts).v0;
}

inline McEstimate nested_z0(const MarketParams& market, const ImParams& im, const Payoff& payoff,
                            double maturity, long n_outer, int n_inner, std::uint64_t seed,
                            NestedOptions opts = {}) {
    return nested_estimate(market, im, payoff, maturity, n_outer, n_inner, seed, opts).z0;
}

} // namespace mbsde
