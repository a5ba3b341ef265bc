#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "mbsde/rng.hpp"
#include "mbsde/tridiag.hpp"
#include "oracles.hpp"

using namespace mbsde;

TEST_CASE("identity system returns the rhs") {
    const std::vector<double> lower(4, 0.0), upper(4, 0.0), diag(5, 1.0);
    const std::vector<double> rhs = {1.0, -2.0, 3.5, 0.0, 7.0};
    CHECK(thomas_solve(lower, diag, upper, rhs) == rhs);
}

TEST_CASE("random diagonally dominant systems against dense elimination") {
    RngStream rng(404, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 5 + static_cast<int>(rng.next_uniform() * 20);
        std::vector<double> lower(n - 1), upper(n - 1), diag(n), rhs(n);
        for (int i = 0; i < n; ++i) {
            rhs[i] = 2.0 * rng.next_gaussian();
            if (i < n - 1) {
                lower[i] = rng.next_gaussian();
                upper[i] = rng.next_gaussian();
            }
        }
        for (int i = 0; i < n; ++i) {
            const double off = (i > 0 ? std::fabs(lower[i - 1]) : 0.0) +
                               (i < n - 1 ? std::fabs(upper[i]) : 0.0);
            diag[i] = off + 1.0 + rng.next_uniform();
        }
        const auto x = thomas_solve(lower, diag, upper, rhs);

        std::vector<double> dense(static_cast<std::size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i) {
            dense[i * n + i] = diag[i];
            if (i > 0) dense[i * n + i - 1] = lower[i - 1];
            if (i < n - 1) dense[i * n + i + 1] = upper[i];
        }
        const auto ref = oracles::dense_solve(dense, rhs, n);
        double rhs_norm = 0.0, resid = 0.0;
        for (int i = 0; i < n; ++i) {
            rhs_norm = std::max(rhs_norm, std::fabs(rhs[i]));
            CHECK(std::fabs(x[i] - ref[i]) < 1e-12 * std::max(1.0, std::fabs(ref[i])));
            double row = diag[i] * x[i];
            if (i > 0) row += lower[i - 1] * x[i - 1];
            if (i < n - 1) row += upper[i] * x[i + 1];
            resid = std::max(resid, std::fabs(row - rhs[i]));
        }
        CHECK(resid <= 1e-10 * std::max(1.0, rhs_norm));
    }
}

TEST_CASE("structurally singular systems are reported") {
    const std::vector<double> lower = {0.0, 0.0}, upper = {0.0, 0.0};
    const std::vector<double> diag = {1.0, 0.0, 1.0};
    const std::vector<double> rhs = {1.0, 1.0, 1.0};
    CHECK_THROWS_AS(thomas_solve(lower, diag, upper, rhs), std::runtime_error);
    const std::vector<double> first_pivot_zero = {0.0, 1.0, 1.0};
    CHECK_THROWS_AS(thomas_solve(lower, first_pivot_zero, upper, rhs), std::runtime_error);
    CHECK_THROWS_AS(thomas_solve(lower, diag, upper, std::vector<double>{1.0}),
                    std::invalid_argument);
}
