#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbsde/normal.hpp"

namespace mbsde {

namespace linalg {

// Lower Cholesky factor of a symmetric positive-definite matrix (row-major d x d).
inline std::vector<double> cholesky_lower(const std::vector<double>& a, int d) {
    std::vector<double> l(static_cast<std::size_t>(d) * d, 0.0);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = a[i * d + j];
            for (int k = 0; k < j; ++k) s -= l[i * d + k] * l[j * d + k];
            if (i == j) {
                if (s <= 0.0)
                    throw std::invalid_argument("cholesky_lower: matrix is not positive definite");
                l[i * d + i] = std::sqrt(s);
            } else {
                l[i * d + j] = s / l[j * d + j];
            }
        }
    }
    return l;
}

// Solves a x = b by Gaussian elimination with partial pivoting (small d).
inline std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b, int d) {
    std::vector<int> piv(d);
    for (int i = 0; i < d; ++i) piv[i] = i;
    for (int col = 0; col < d; ++col) {
        int best = col;
        for (int r = col + 1; r < d; ++r)
            if (std::fabs(a[r * d + col]) > std::fabs(a[best * d + col])) best = r;
        if (std::fabs(a[best * d + col]) < 1e-14)
            throw std::invalid_argument("solve_dense: matrix is singular");
        if (best != col) {
            for (int c = 0; c < d; ++c) std::swap(a[col * d + c], a[best * d + c]);
            std::swap(b[col], b[best]);
        }
        for (int r = col + 1; r < d; ++r) {
            const double f = a[r * d + col] / a[col * d + col];
            for (int c = col; c < d; ++c) a[r * d + c] -= f * a[col * d + c];
            b[r] -= f * b[col];
        }
    }
    for (int r = d - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < d; ++c) s -= a[r * d + c] * b[c];
        b[r] = s / a[r * d + r];
    }
    return b;
}

inline std::vector<double> invert_dense(const std::vector<double>& a, int d) {
    std::vector<double> inv(static_cast<std::size_t>(d) * d);
    for (int col = 0; col < d; ++col) {
        std::vector<double> e(d, 0.0);
        e[col] = 1.0;
        const auto x = solve_dense(a, e, d);
        for (int r = 0; r < d; ++r) inv[r * d + col] = x[r];
    }
    return inv;
}

} // namespace linalg

// Constant-coefficient Ito market: d risky assets following correlated GBM,
//   dS^i/S^i = mu_i dt + sum_j sigma_ij dW^j.
struct MarketParams {
    double r = 0.0;
    std::vector<double> mu;     // length d, per year
    std::vector<double> sigma;  // d x d row-major, per sqrt(year)
    std::vector<double> s0;     // length d, strictly positive

    int dim() const { return static_cast<int>(s0.size()); }

    MarketParams() = default;
    MarketParams(double rate, std::vector<double> drift, std::vector<double> vol,
                 std::vector<double> spot)
        : r(rate), mu(std::move(drift)), sigma(std::move(vol)), s0(std::move(spot)) {
        const int d = dim();
        if (d < 1) throw std::invalid_argument("MarketParams: need at least one asset");
        if (static_cast<int>(mu.size()) != d)
            throw std::invalid_argument("MarketParams: mu has wrong length");
        if (static_cast<int>(sigma.size()) != d * d)
            throw std::invalid_argument("MarketParams: sigma must be d x d");
        for (double s : s0)
            if (!(s > 0.0)) throw std::invalid_argument("MarketParams: s0 must be positive");
    }

    static MarketParams single(double rate, double drift, double vol, double spot) {
        return MarketParams(rate, {drift}, {vol}, {spot});
    }

    double vol1() const {
        if (dim() != 1) throw std::invalid_argument("MarketParams: scalar vol needs d = 1");
        return sigma[0];
    }

    // Sigma_ii = (sigma sigma^T)_ii, the total variance rate per asset.
    std::vector<double> variance_diag() const {
        const int d = dim();
        std::vector<double> out(d, 0.0);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) out[i] += sigma[i * d + j] * sigma[i * d + j];
        return out;
    }

    // lambda = sigma^{-1} (r 1 - mu); requires sigma full rank.
    std::vector<double> risk_premium() const {
        const int d = dim();
        std::vector<double> rhs(d);
        for (int i = 0; i < d; ++i) rhs[i] = r - mu[i];
        return linalg::solve_dense(sigma, std::move(rhs), d);
    }

    // A0 = (diag(s0) sigma)^{-1}; maps Z_0 to the vector of spot deltas.
    std::vector<double> delta_normalizer() const {
        const int d = dim();
        std::vector<double> m(static_cast<std::size_t>(d) * d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) m[i * d + j] = s0[i] * sigma[i * d + j];
        return linalg::invert_dense(m, d);
    }
};

// Equicorrelated volatility structure: Sigma_ii = sigma0^2, Sigma_ij = sigma0^2 rho.
struct CorrelationSpec {
    double sigma0 = 0.25;
    double rho = 0.0;
    int d = 1;

    CorrelationSpec(double vol, double corr, int dim) : sigma0(vol), rho(corr), d(dim) {
        if (d < 1) throw std::invalid_argument("CorrelationSpec: d must be >= 1");
        if (!(sigma0 > 0.0)) throw std::invalid_argument("CorrelationSpec: sigma0 must be positive");
        if (d > 1 && !(rho > -1.0 / (d - 1) && rho <= 1.0))
            throw std::invalid_argument("CorrelationSpec: rho outside (-1/(d-1), 1]");
    }

    std::vector<double> correlation() const {
        std::vector<double> c(static_cast<std::size_t>(d) * d, rho);
        for (int i = 0; i < d; ++i) c[i * d + i] = 1.0;
        return c;
    }

    // sigma = sigma0 * chol(correlation); any full-rank square root of Sigma
    // would do, Cholesky keeps the construction deterministic.
    std::vector<double> vol_matrix() const {
        auto l = linalg::cholesky_lower(correlation(), d);
        for (double& v : l) v *= sigma0;
        return l;
    }

    MarketParams to_market(double r, const std::vector<double>& s0,
                           const std::vector<double>& mu) const {
        return MarketParams(r, mu, vol_matrix(), s0);
    }

    MarketParams to_market(double r, const std::vector<double>& s0) const {
        return to_market(r, s0, std::vector<double>(d, r));
    }
};

// Initial-margin cost parameters: funding spread R, CVaR level alpha,
// margin horizon delta, and the cached Gaussian CVaR constant C_alpha.
struct ImParams {
    double spread = 0.0;   // R, per year
    double alpha = 0.99;
    double horizon = 0.02; // delta, years
    double c_alpha = 0.0;

    ImParams() : ImParams(0.0, 0.99, 0.02) {}
    ImParams(double r_spread, double level, double margin_horizon)
        : spread(r_spread), alpha(level), horizon(margin_horizon) {
        if (spread < 0.0) throw std::invalid_argument("ImParams: spread must be >= 0");
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::invalid_argument("ImParams: alpha must lie in (0,1)");
        if (!(horizon > 0.0)) throw std::invalid_argument("ImParams: horizon must be positive");
        c_alpha = gaussian_cvar_constant(alpha);
    }

    // R * C_alpha * sqrt((t + delta) ^ T - t), the IM driver weight at time t.
    double driver_weight(double t, double maturity) const {
        const double h = std::min(t + horizon, maturity) - t;
        return spread * c_alpha * std::sqrt(std::max(h, 0.0));
    }
};

} // namespace mbsde
