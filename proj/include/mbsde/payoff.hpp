#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "mbsde/market.hpp"
#include "mbsde/normal.hpp"

namespace mbsde {

enum class PayoffKind { Call, Put, Butterfly, BasketCall };

struct Payoff {
    PayoffKind kind = PayoffKind::Call;
    double strike = 0.0;
    double wing = 2.0;            // butterfly only, currency units
    std::vector<double> weights;  // basket only, nonnegative

    static Payoff call(double strike) { return make(PayoffKind::Call, strike); }
    static Payoff put(double strike) { return make(PayoffKind::Put, strike); }
    static Payoff butterfly(double strike, double wing = 2.0) {
        Payoff p = make(PayoffKind::Butterfly, strike);
        if (!(wing > 0.0)) throw std::invalid_argument("Payoff: wing must be positive");
        p.wing = wing;
        return p;
    }
    static Payoff basket_call(double strike, std::vector<double> weights) {
        Payoff p = make(PayoffKind::BasketCall, strike);
        if (weights.empty()) throw std::invalid_argument("Payoff: basket needs weights");
        for (double w : weights)
            if (w < 0.0) throw std::invalid_argument("Payoff: basket weights must be >= 0");
        p.weights = std::move(weights);
        return p;
    }

    int dim() const { return kind == PayoffKind::BasketCall ? static_cast<int>(weights.size()) : 1; }

    // Lipschitz constant bound from the piecewise-linear structure.
    double lipschitz_constant() const {
        if (kind == PayoffKind::BasketCall)
            return std::max(1.0, std::accumulate(weights.begin(), weights.end(), 0.0));
        return 1.0;
    }

private:
    static Payoff make(PayoffKind k, double strike) {
        if (!(strike > 0.0)) throw std::invalid_argument("Payoff: strike must be positive");
        Payoff p;
        p.kind = k;
        p.strike = strike;
        return p;
    }
};

inline double evaluate(const Payoff& p, std::span<const double> s) {
    switch (p.kind) {
        case PayoffKind::Call:
            if (s.size() != 1) throw std::invalid_argument("evaluate: call expects d = 1");
            return std::max(s[0] - p.strike, 0.0);
        case PayoffKind::Put:
            if (s.size() != 1) throw std::invalid_argument("evaluate: put expects d = 1");
            return std::max(p.strike - s[0], 0.0);
        case PayoffKind::Butterfly: {
            if (s.size() != 1) throw std::invalid_argument("evaluate: butterfly expects d = 1");
            const double w = p.wing;
            return std::max(s[0] - (p.strike - w), 0.0) - 2.0 * std::max(s[0] - p.strike, 0.0) +
                   std::max(s[0] - (p.strike + w), 0.0);
        }
        case PayoffKind::BasketCall: {
            if (s.size() != p.weights.size())
                throw std::invalid_argument("evaluate: basket dimension mismatch");
            double b = 0.0;
            for (std::size_t i = 0; i < s.size(); ++i) b += p.weights[i] * s[i];
            return std::max(b - p.strike, 0.0);
        }
    }
    throw std::logic_error("evaluate: unknown payoff kind");
}

inline double evaluate(const Payoff& p, double s) {
    return evaluate(p, std::span<const double>(&s, 1));
}

namespace detail {

inline double bs_call_z(double s, double strike, double r, double sigma, double tau) {
    if (tau <= 1e-14) return sigma * s * (s > strike ? 1.0 : (s == strike ? 0.5 : 0.0));
    const double sq = sigma * std::sqrt(tau);
    const double d1 = (std::log(s / strike) + (r + 0.5 * sigma * sigma) * tau) / sq;
    return sigma * s * normal_cdf(d1);
}

} // namespace detail

// Z^BS(t, s) = sigma * s * dV/dS for the Black-Scholes price of the payoff,
// assembled from call deltas (butterfly = call(K-w) - 2 call(K) + call(K+w)).
inline double bs_delta_superposition(const Payoff& p, double s, double t,
                                     const MarketParams& market, double maturity) {
    if (market.dim() != 1)
        throw std::invalid_argument("bs_delta_superposition: requires d = 1");
    if (!(s > 0.0)) throw std::invalid_argument("bs_delta_superposition: s must be positive");
    const double tau = maturity - t;
    if (tau < 0.0) throw std::invalid_argument("bs_delta_superposition: t beyond maturity");
    const double sigma = market.vol1();
    const double r = market.r;
    switch (p.kind) {
        case PayoffKind::Call:
            return detail::bs_call_z(s, p.strike, r, sigma, tau);
        case PayoffKind::Put:
            return detail::bs_call_z(s, p.strike, r, sigma, tau) - sigma * s;
        case PayoffKind::Butterfly:
            return detail::bs_call_z(s, p.strike - p.wing, r, sigma, tau) -
                   2.0 * detail::bs_call_z(s, p.strike, r, sigma, tau) +
                   detail::bs_call_z(s, p.strike + p.wing, r, sigma, tau);
        default:
            throw std::invalid_argument("bs_delta_superposition: no closed form for this payoff");
    }
}

} // namespace mbsde
