#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mbsde/market.hpp"
#include "mbsde/rng.hpp"

using namespace mbsde;

TEST_CASE("MarketParams validation") {
    CHECK_THROWS_AS(MarketParams(0.02, {0.02}, {0.25}, {-1.0}), std::invalid_argument);
    CHECK_THROWS_AS(MarketParams(0.02, {0.02}, {0.25}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(MarketParams(0.02, {0.02, 0.02}, {0.25}, {20.0}), std::invalid_argument);
    CHECK_THROWS_AS(MarketParams(0.02, {}, {}, {}), std::invalid_argument);
    const auto m = MarketParams::single(0.02, 0.03, 0.25, 20.0);
    CHECK(m.dim() == 1);
    CHECK(std::fabs(m.risk_premium()[0] - (0.02 - 0.03) / 0.25) < 1e-15);
    // singular volatility is usable for simulation but has no risk premium
    const auto degenerate = MarketParams::single(0.02, 0.02, 0.0, 20.0);
    CHECK_THROWS_AS(degenerate.risk_premium(), std::invalid_argument);
}

TEST_CASE("CorrelationSpec produces the equicorrelated covariance") {
    // || L L^T - Sigma ||_inf < 1e-12 across dimensions and correlations
    RngStream rng(11, 0);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = 1 + static_cast<int>(rng.next_uniform() * 10);
        const double lo = d > 1 ? -1.0 / (d - 1) : -0.5;
        const double rho = lo + (0.999 - lo) * rng.next_uniform();
        const double sigma0 = 0.05 + 0.5 * rng.next_uniform();
        const CorrelationSpec spec(sigma0, rho, d);
        const auto vol = spec.vol_matrix();
        double worst = 0.0;
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                double cov = 0.0;
                for (int k = 0; k < d; ++k) cov += vol[i * d + k] * vol[j * d + k];
                const double target = i == j ? sigma0 * sigma0 : sigma0 * sigma0 * rho;
                worst = std::max(worst, std::fabs(cov - target));
            }
        }
        CHECK(worst < 1e-12);
    }
    CHECK_THROWS_AS(CorrelationSpec(0.25, -0.6, 3), std::invalid_argument);
    CHECK_THROWS_AS(CorrelationSpec(0.25, 1.2, 3), std::invalid_argument);
    CHECK_THROWS_AS(CorrelationSpec(0.0, 0.5, 3), std::invalid_argument);
}

TEST_CASE("ImParams caches the Gaussian CVaR constant") {
    const ImParams im(0.02, 0.99, 0.02);
    CHECK(std::fabs(im.c_alpha - gaussian_cvar_constant(0.99)) < 1e-12);
    CHECK(std::fabs(im.c_alpha - 2.665214) < 1e-6);
    CHECK_THROWS_AS(ImParams(-0.01, 0.99, 0.02), std::invalid_argument);
    CHECK_THROWS_AS(ImParams(0.02, 1.2, 0.02), std::invalid_argument);
    CHECK_THROWS_AS(ImParams(0.02, 0.99, 0.0), std::invalid_argument);
    // driver weight: R C_a sqrt((t+delta)^T - t), flat then decaying to zero
    CHECK(std::fabs(im.driver_weight(0.0, 1.0) -
                    0.02 * im.c_alpha * std::sqrt(0.02)) < 1e-15);
    CHECK(std::fabs(im.driver_weight(0.99, 1.0) -
                    0.02 * im.c_alpha * std::sqrt(0.01)) < 1e-15);
    CHECK(im.driver_weight(1.0, 1.0) == 0.0);
}

TEST_CASE("delta normalizer inverts diag(s0) sigma") {
    const CorrelationSpec spec(0.25, 0.75, 3);
    const auto market = spec.to_market(0.02, {18.0, 20.0, 22.0});
    const auto a0 = market.delta_normalizer();
    // (diag(s0) sigma) * a0 = identity
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double v = 0.0;
            for (int k = 0; k < 3; ++k)
                v += market.s0[i] * market.sigma[i * 3 + k] * a0[k * 3 + j];
            CHECK(std::fabs(v - (i == j ? 1.0 : 0.0)) < 1e-12);
        }
    }
}
