#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "mbsde/black_scholes.hpp"
#include "mbsde/payoff.hpp"
#include "mbsde/rng.hpp"

using namespace mbsde;

TEST_CASE("butterfly tent values") {
    const auto p = Payoff::butterfly(20.0);
    CHECK(evaluate(p, 20.0) == 2.0);  // peak equals the wing width
    CHECK(evaluate(p, 17.0) == 0.0);
    CHECK(evaluate(p, 23.0) == 0.0);
    CHECK(evaluate(p, 19.0) == 1.0);
    CHECK(evaluate(p, 21.0) == 1.0);
}

TEST_CASE("basket arithmetic") {
    const auto p = Payoff::basket_call(20.0, {0.5, 0.5});
    const std::vector<double> s = {18.0, 26.0};
    CHECK(evaluate(p, s) == 2.0);
    const std::vector<double> low = {10.0, 10.0};
    CHECK(evaluate(p, low) == 0.0);
    const std::vector<double> wrong_dim = {18.0, 26.0, 2.0};
    CHECK_THROWS_AS(evaluate(p, wrong_dim), std::invalid_argument);
}

TEST_CASE("butterfly equals the call superposition pointwise") {
    const auto bfly = Payoff::butterfly(20.0);
    for (double s = 0.5; s < 45.0; s += 0.37) {
        const double combo = evaluate(Payoff::call(18.0), s) - 2.0 * evaluate(Payoff::call(20.0), s) +
                             evaluate(Payoff::call(22.0), s);
        CHECK(evaluate(bfly, s) == combo);
    }
}

TEST_CASE("payoffs are Lipschitz with the declared constant") {
    RngStream rng(17, 0);
    const auto call = Payoff::call(20.0);
    const auto bfly = Payoff::butterfly(20.0);
    const auto basket = Payoff::basket_call(20.0, {0.3, 0.3, 0.4});
    for (int trial = 0; trial < 10000; ++trial) {
        const double x = 40.0 * rng.next_uniform();
        const double y = 40.0 * rng.next_uniform();
        CHECK(std::fabs(evaluate(call, x) - evaluate(call, y)) <=
              call.lipschitz_constant() * std::fabs(x - y) + 1e-12);
        CHECK(std::fabs(evaluate(bfly, x) - evaluate(bfly, y)) <=
              bfly.lipschitz_constant() * std::fabs(x - y) + 1e-12);
        std::vector<double> sx(3), sy(3);
        double max_diff = 0.0;
        for (int i = 0; i < 3; ++i) {
            sx[i] = 40.0 * rng.next_uniform();
            sy[i] = 40.0 * rng.next_uniform();
            max_diff = std::max(max_diff, std::fabs(sx[i] - sy[i]));
        }
        CHECK(std::fabs(evaluate(basket, sx) - evaluate(basket, sy)) <=
              basket.lipschitz_constant() * max_diff + 1e-12);
    }
}

TEST_CASE("payoff validation") {
    CHECK_THROWS_AS(Payoff::call(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Payoff::call(-3.0), std::invalid_argument);
    CHECK_THROWS_AS(Payoff::butterfly(20.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Payoff::basket_call(20.0, {0.5, -0.5}), std::invalid_argument);
    CHECK_THROWS_AS(Payoff::basket_call(20.0, {}), std::invalid_argument);
}

TEST_CASE("bs_delta_superposition for a call equals sigma s N(d1)") {
    const auto market = MarketParams::single(0.02, 0.02, 0.25, 20.0);
    // frozen from the closed form sigma*s*N(d1) at s=20, t=0.5, T=1, K=20
    const double z = bs_delta_superposition(Payoff::call(20.0), 20.0, 0.5, market, 1.0);
    CHECK(std::fabs(z - 2.7881377) < 1e-6);
    const double d1 = (std::log(20.0 / 20.0) + (0.02 + 0.5 * 0.25 * 0.25) * 0.5) /
                      (0.25 * std::sqrt(0.5));
    CHECK(std::fabs(z - 0.25 * 20.0 * normal_cdf(d1)) < 1e-14);
}

TEST_CASE("bs_delta_superposition matches a finite difference of the price") {
    const auto market = MarketParams::single(0.02, 0.02, 0.25, 20.0);
    const double h = 1e-5;
    auto bfly_price = [&](double s) {
        return bs_price_delta(s, 18.0, 0.02, 0.25, 1.0, PayoffKind::Call).price -
               2.0 * bs_price_delta(s, 20.0, 0.02, 0.25, 1.0, PayoffKind::Call).price +
               bs_price_delta(s, 22.0, 0.02, 0.25, 1.0, PayoffKind::Call).price;
    };
    for (double s : {15.0, 18.0, 20.0, 22.0, 27.0}) {
        const double fd = (bfly_price(s + h) - bfly_price(s - h)) / (2.0 * h);
        const double z = bs_delta_superposition(Payoff::butterfly(20.0), s, 0.0, market, 1.0);
        CHECK(std::fabs(z - 0.25 * s * fd) < 1e-6);
    }
}

TEST_CASE("butterfly Z^BS scale agrees with the reported delta at the money") {
    const auto market = MarketParams::single(0.02, 0.02, 0.25, 20.0);
    // Z^BS/(sigma S0) at (0, 20) is the butterfly delta, 0.0021 in the tables
    const double z = bs_delta_superposition(Payoff::butterfly(20.0), 20.0, 0.0, market, 1.0);
    CHECK(std::fabs(z / (0.25 * 20.0) - 0.0021) < 2e-4);
}

TEST_CASE("bs_delta_superposition edge and error paths") {
    const auto market = MarketParams::single(0.02, 0.02, 0.25, 20.0);
    // deep out-of-the-money wing decays to zero
    CHECK(std::fabs(bs_delta_superposition(Payoff::butterfly(20.0), 200.0, 0.0, market, 1.0)) <
          1e-10);
    CHECK_THROWS_AS(
        bs_delta_superposition(Payoff::basket_call(20.0, {1.0}), 20.0, 0.0, market, 1.0),
        std::invalid_argument);
}
