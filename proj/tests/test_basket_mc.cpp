#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "mbsde/basket_mc.hpp"
#include "mbsde/black_scholes.hpp"

using namespace mbsde;

TEST_CASE("one-asset basket reduces to the vanilla call") {
    const auto market = MarketParams::single(0.02, 0.02, 0.25, 20.0);
    const auto res = basket_reference_mc(market, Payoff::basket_call(20.0, {1.0}), 1.0, 400000, 7);
    const auto bs = bs_price_delta(20.0, 20.0, 0.02, 0.25, 1.0, PayoffKind::Call);
    CHECK(std::fabs(res.price.value - bs.price) < 3.0 * res.price.std_error);
    CHECK(std::fabs(res.deltas[0].value - bs.delta) < 3.0 * res.deltas[0].std_error);
}

TEST_CASE("vanishing volatility hits the deterministic limit") {
    const CorrelationSpec spec(1e-8, 0.5, 2);
    const auto market = spec.to_market(0.02, {18.0, 26.0});
    // weights summing to 1.2 on purpose
    const auto payoff = Payoff::basket_call(20.0, {0.6, 0.6});
    const auto res = basket_reference_mc(market, payoff, 1.0, 1000, 3);
    const double fwd = 0.6 * 18.0 * std::exp(0.02) + 0.6 * 26.0 * std::exp(0.02);
    const double expected = std::exp(-0.02) * std::max(fwd - 20.0, 0.0);
    CHECK(std::fabs(res.price.value - expected) < 1e-6);
    CHECK(res.price.std_error < 1e-6);
}

TEST_CASE("three-asset basket near the reported table midpoint") {
    const CorrelationSpec spec(0.25, 0.75, 3);
    const auto market = spec.to_market(0.02, {18.0, 20.0, 22.0});
    const auto payoff = Payoff::basket_call(20.0, std::vector<double>(3, 1.0 / 3.0));
    const auto res = basket_reference_mc(market, payoff, 1.0, 1000000, 99);
    CHECK(std::fabs(res.price.value - 2.0074) < 3.0 * res.price.std_error + 7e-4);
    CHECK(res.price.ci_high - res.price.ci_low < 0.05);
}

TEST_CASE("likelihood-ratio deltas match a finite-difference bump") {
    const CorrelationSpec spec(0.25, 0.75, 2);
    const std::vector<double> s0 = {18.0, 20.0};
    const auto payoff = Payoff::basket_call(20.0, {0.5, 0.5});
    const auto base = spec.to_market(0.02, s0);
    const auto res = basket_reference_mc(base, payoff, 1.0, 400000, 2024);
    const double h = 1e-4;
    for (int i = 0; i < 2; ++i) {
        auto up = s0, dn = s0;
        up[i] += h;
        dn[i] -= h;
        // same seed on the bumped markets: common random numbers
        const auto pu = basket_reference_mc(spec.to_market(0.02, up), payoff, 1.0, 400000, 2024);
        const auto pd = basket_reference_mc(spec.to_market(0.02, dn), payoff, 1.0, 400000, 2024);
        const double fd = (pu.price.value - pd.price.value) / (2.0 * h);
        CHECK(std::fabs(res.deltas[i].value - fd) < 3.0 * res.deltas[i].std_error + 1e-3);
    }
}

TEST_CASE("basket estimates are reproducible and validated") {
    const CorrelationSpec spec(0.25, 0.75, 2);
    const auto market = spec.to_market(0.02, {18.0, 20.0});
    const auto payoff = Payoff::basket_call(20.0, {0.5, 0.5});
    const auto a = basket_reference_mc(market, payoff, 1.0, 50000, 5);
    const auto b = basket_reference_mc(market, payoff, 1.0, 50000, 5);
    CHECK(a.price.value == b.price.value);
    CHECK(a.deltas[1].value == b.deltas[1].value);
    CHECK_THROWS_AS(basket_reference_mc(market, payoff, 1.0, 1, 5), std::invalid_argument);
    CHECK_THROWS_AS(basket_reference_mc(market, Payoff::call(20.0), 1.0, 100, 5),
                    std::invalid_argument);
}
