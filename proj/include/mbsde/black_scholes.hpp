#pragma once

#include <cmath>
#include <stdexcept>

#include "mbsde/market.hpp"
#include "mbsde/normal.hpp"
#include "mbsde/payoff.hpp"

namespace mbsde {

struct BsQuote {
    double price = 0.0;
    double delta = 0.0;
};

namespace detail {

// Forward-form Black-Scholes quote; div_integral = int_0^T d(t) dt.
inline BsQuote bs_forward_quote(double s0, double strike, double r, double sigma, double maturity,
                                PayoffKind kind, double div_integral) {
    const double fwd = s0 * std::exp(r * maturity - div_integral);
    const double disc = std::exp(-r * maturity);
    const double sq = sigma * std::sqrt(maturity);
    if (sq < 1e-12) {
        if (kind == PayoffKind::Call) {
            const double intrinsic = disc * (fwd - strike);
            return intrinsic > 0.0 ? BsQuote{intrinsic, std::exp(-div_integral)} : BsQuote{0.0, 0.0};
        }
        const double intrinsic = disc * (strike - fwd);
        return intrinsic > 0.0 ? BsQuote{intrinsic, -std::exp(-div_integral)} : BsQuote{0.0, 0.0};
    }
    const double d1 = (std::log(fwd / strike) + 0.5 * sq * sq) / sq;
    const double d2 = d1 - sq;
    if (kind == PayoffKind::Call)
        return {disc * (fwd * normal_cdf(d1) - strike * normal_cdf(d2)),
                std::exp(-div_integral) * normal_cdf(d1)};
    return {disc * (strike * normal_cdf(-d2) - fwd * normal_cdf(-d1)),
            -std::exp(-div_integral) * normal_cdf(-d1)};
}

inline void check_vanilla_inputs(double s0, double strike, double sigma, double maturity,
                                 PayoffKind kind) {
    if (kind != PayoffKind::Call && kind != PayoffKind::Put)
        throw std::invalid_argument("bs quote: closed form covers calls and puts only");
    if (!(s0 > 0.0) || !(strike > 0.0) || !(maturity > 0.0) || sigma < 0.0)
        throw std::invalid_argument("bs quote: inputs must be positive");
}

} // namespace detail

inline BsQuote bs_price_delta(double s0, double strike, double r, double sigma, double maturity,
                              PayoffKind kind) {
    detail::check_vanilla_inputs(s0, strike, sigma, maturity, kind);
    return detail::bs_forward_quote(s0, strike, r, sigma, maturity, kind, 0.0);
}

// Time-dependent IM dividend yield d(t) = sign * C_alpha * R * sigma * sqrt((t+delta)^T - t);
// sign = -1 for calls, +1 for puts.
struct DividendCurve {
    double sign = -1.0;
    ImParams im;
    double sigma = 0.0;
    double maturity = 0.0;

    static DividendCurve for_option(PayoffKind kind, const ImParams& im, double sigma,
                                    double maturity) {
        if (kind != PayoffKind::Call && kind != PayoffKind::Put)
            throw std::invalid_argument("DividendCurve: only calls and puts carry a constant sign");
        return {kind == PayoffKind::Call ? -1.0 : 1.0, im, sigma, maturity};
    }

    double level(double t) const {
        const double h = std::min(t + im.horizon, maturity) - t;
        return sign * im.c_alpha * im.spread * sigma * std::sqrt(std::max(h, 0.0));
    }
};

namespace detail {

// int_{t0}^{t1} sqrt((t + delta) ^ T - t) dt in closed form: the integrand is
// sqrt(delta) until T - delta, then sqrt(T - t).
inline double sqrt_horizon_integral(double t0, double t1, double maturity, double horizon) {
    const double flat_end = maturity - horizon;
    double out = 0.0;
    const double flat = std::min(t1, flat_end) - t0;
    if (flat > 0.0) out += flat * std::sqrt(horizon);
    const double a = std::max(t0, flat_end);
    if (t1 > a) {
        const double ha = maturity - a;
        const double hb = maturity - t1;
        out += (2.0 / 3.0) * (ha * std::sqrt(ha) - hb * std::sqrt(hb));
    }
    return out;
}

} // namespace detail

inline double dividend_integral(const DividendCurve& curve, double t0, double t1) {
    if (!(t0 >= 0.0 && t0 <= t1 && t1 <= curve.maturity))
        throw std::invalid_argument("dividend_integral: need 0 <= t0 <= t1 <= T");
    return curve.sign * curve.im.c_alpha * curve.im.spread * curve.sigma *
           detail::sqrt_horizon_integral(t0, t1, curve.maturity, curve.im.horizon);
}

// Closed-form price under the IM funding cost: Black-Scholes with the
// dividend curve above folded into the forward.
inline BsQuote bs_price_delta_with_im(double s0, double strike, double r, double sigma,
                                      double maturity, PayoffKind kind, const ImParams& im) {
    detail::check_vanilla_inputs(s0, strike, sigma, maturity, kind);
    const auto curve = DividendCurve::for_option(kind, im, sigma, maturity);
    const double d_int = dividend_integral(curve, 0.0, maturity);
    return detail::bs_forward_quote(s0, strike, r, sigma, maturity, kind, d_int);
}

// Inverts the reference (no-dividend) Black-Scholes price. Newton from 0.25
// with a bracketing bisection fallback on [1e-4, 5]; price residual 1e-12.
inline double implied_vol(double price, double s0, double strike, double r, double maturity,
                          PayoffKind kind) {
    detail::check_vanilla_inputs(s0, strike, 1.0, maturity, kind);
    const double disc_k = strike * std::exp(-r * maturity);
    const double lower_bound =
        kind == PayoffKind::Call ? std::max(s0 - disc_k, 0.0) : std::max(disc_k - s0, 0.0);
    const double upper_bound = kind == PayoffKind::Call ? s0 : disc_k;
    if (!(price >= lower_bound - 1e-14) || !(price <= upper_bound + 1e-14))
        throw std::domain_error("implied_vol: price outside attainable range");

    double lo = 1e-4, hi = 5.0;
    auto value = [&](double v) {
        return detail::bs_forward_quote(s0, strike, r, v, maturity, kind, 0.0).price - price;
    };
    if (value(lo) > 0.0) return lo;  // at or below the deterministic limit
    if (value(hi) < 0.0) throw std::domain_error("implied_vol: price above vol = 5 value");

    double v = 0.25;
    for (int it = 0; it < 100; ++it) {
        const double f = value(v);
        if (std::fabs(f) < 1e-12) return v;
        if (f > 0.0) hi = v; else lo = v;
        const double sq = v * std::sqrt(maturity);
        const double fwd = s0 * std::exp(r * maturity);
        const double d1 = (std::log(fwd / strike) + 0.5 * sq * sq) / sq;
        const double vega = s0 * normal_pdf(d1) * std::sqrt(maturity);
        double next = v - f / vega;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        v = next;
    }
    return v;
}

// Sign of d(sigma_impl)/dK at the at-the-money-forward strike, by central
// difference with h = 1e-3 K. Returns 0 for a flat smile (R = 0).
inline int atmf_skew_sign(double s0, double r, double sigma, double maturity, const ImParams& im,
                          PayoffKind kind) {
    const double k_fwd = s0 * std::exp(r * maturity);
    const double h = 1e-3 * k_fwd;
    auto iv_at = [&](double k) {
        const double p = bs_price_delta_with_im(s0, k, r, sigma, maturity, kind, im).price;
        return implied_vol(p, s0, k, r, maturity, kind);
    };
    const double slope = (iv_at(k_fwd + h) - iv_at(k_fwd - h)) / (2.0 * h);
    if (std::fabs(slope) < 1e-8) return 0;
    return slope > 0.0 ? 1 : -1;
}

} // namespace mbsde
