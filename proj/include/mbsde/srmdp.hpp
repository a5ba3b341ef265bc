#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbsde/fd.hpp"
#include "mbsde/market.hpp"
#include "mbsde/mc_stats.hpp"
#include "mbsde/payoff.hpp"
#include "mbsde/rng.hpp"

namespace mbsde {

// BSDE generators:
//   NL  f = -r v + z lambda + R C_a sqrt((t+delta)^T - t) |z|
//   DF  f = -r v + z lambda + R C_a sqrt((t+delta)^T - t) |z + Z^BS(t,S)|, zero terminal
//   BS  f = -r v + z lambda
enum class DriverKind { NL, DF, BS };

struct Driver {
    DriverKind kind = DriverKind::NL;
    MarketParams market;
    ImParams im;
    double maturity = 1.0;
    ZbsSource exogenous;  // DF only: Z^BS accessor (d = 1)

    Driver(DriverKind k, MarketParams mkt, ImParams im_params, double t)
        : kind(k), market(std::move(mkt)), im(im_params), maturity(t) {
        if (kind == DriverKind::DF)
            throw std::invalid_argument("Driver: DF needs an exogenous Z^BS accessor");
    }
    Driver(MarketParams mkt, ImParams im_params, double t, ZbsSource zbs)
        : kind(DriverKind::DF), market(std::move(mkt)), im(im_params), maturity(t),
          exogenous(std::move(zbs)) {
        if (market.dim() != 1)
            throw std::invalid_argument("Driver: DF driver requires d = 1");
        if (!exogenous) throw std::invalid_argument("Driver: DF needs a Z^BS accessor");
    }
};

enum class LocalBasis { LP0, LP1 };

// Hypercube partition of the standardized log-price box. Cube counts per
// dimension are grown greedily so their product approaches n_cubes from
// below.
struct Stratification {
    double box_lo = -5.0;
    double box_hi = 5.0;
    int n_cubes = 2800;
    LocalBasis basis = LocalBasis::LP0;
    int n_sims_per_cube = 2500;
    int n_time_steps = 50;
    int n_batches = 10;

    std::vector<int> cubes_per_dim(int d) const {
        int base = static_cast<int>(std::floor(std::pow(static_cast<double>(n_cubes),
                                                        1.0 / d) + 1e-9));
        base = std::max(base, 1);
        std::vector<int> m(d, base);
        bool grew = true;
        while (grew) {
            grew = false;
            for (int k = 0; k < d; ++k) {
                long prod = 1;
                for (int j = 0; j < d; ++j) prod *= (j == k) ? m[j] + 1 : m[j];
                if (prod <= n_cubes) {
                    ++m[k];
                    grew = true;
                }
            }
        }
        return m;
    }
};

struct BsdeSolution {
    McEstimate v0;
    std::vector<McEstimate> z0;  // Z_0 A_0 componentwise (spot deltas scale)
};

namespace detail {

struct SrmdpWorkspace {
    // market-derived
    int d = 0;
    double maturity = 0.0;
    double dt = 0.0;
    int n_steps = 0;
    std::vector<double> lambda;       // sigma^{-1}(r 1 - mu)
    bool lambda_zero = true;
    std::vector<double> step_mat;     // sqrt(dt/T) * row-normalized sigma, d x d
    std::vector<double> log_s0, drift_rate, total_std;  // per asset
    // stratification
    std::vector<int> dims;
    std::vector<double> lo, width, inv_width, center0;
    int n_cells = 0;
    int n_basis = 1;

    double state_log_price(int asset, double t, double u) const {
        return log_s0[asset] + drift_rate[asset] * t + total_std[asset] * u;
    }
};

inline SrmdpWorkspace make_workspace(const MarketParams& market, double maturity,
                                     const Stratification& strat) {
    SrmdpWorkspace w;
    w.d = market.dim();
    w.maturity = maturity;
    w.n_steps = strat.n_time_steps;
    w.dt = maturity / strat.n_time_steps;
    const auto var_diag = market.variance_diag();
    w.log_s0.resize(w.d);
    w.drift_rate.resize(w.d);
    w.total_std.resize(w.d);
    for (int i = 0; i < w.d; ++i) {
        w.log_s0[i] = std::log(market.s0[i]);
        w.drift_rate[i] = market.mu[i] - 0.5 * var_diag[i];
        w.total_std[i] = std::sqrt(var_diag[i] * maturity);
        if (!(w.total_std[i] > 0.0))
            throw std::invalid_argument("srmdp: each asset needs nonzero volatility");
    }
    w.lambda.assign(w.d, 0.0);
    w.lambda_zero = true;
    for (int i = 0; i < w.d; ++i)
        if (market.mu[i] != market.r) w.lambda_zero = false;
    if (!w.lambda_zero) w.lambda = market.risk_premium();

    const double scale = std::sqrt(w.dt / maturity);
    w.step_mat.resize(static_cast<std::size_t>(w.d) * w.d);
    for (int i = 0; i < w.d; ++i)
        for (int j = 0; j < w.d; ++j)
            w.step_mat[i * w.d + j] = scale * market.sigma[i * w.d + j] / std::sqrt(var_diag[i]);

    w.dims = strat.cubes_per_dim(w.d);
    w.lo.assign(w.d, strat.box_lo);
    w.width.resize(w.d);
    w.inv_width.resize(w.d);
    w.n_cells = 1;
    for (int k = 0; k < w.d; ++k) {
        w.width[k] = (strat.box_hi - strat.box_lo) / w.dims[k];
        w.inv_width[k] = 1.0 / w.width[k];
        w.n_cells *= w.dims[k];
    }
    w.n_basis = strat.basis == LocalBasis::LP0 ? 1 : 1 + w.d;
    return w;
}

inline int cell_index(const SrmdpWorkspace& w, const double* u) {
    int idx = 0;
    for (int k = 0; k < w.d; ++k) {
        int i = static_cast<int>((u[k] - w.lo[k]) * w.inv_width[k]);
        i = std::max(0, std::min(i, w.dims[k] - 1));
        idx = idx * w.dims[k] + i;
    }
    return idx;
}

inline void cell_center(const SrmdpWorkspace& w, int cell, double* out) {
    for (int k = w.d - 1; k >= 0; --k) {
        const int i = cell % w.dims[k];
        cell /= w.dims[k];
        out[k] = w.lo[k] + (i + 0.5) * w.width[k];
    }
}

struct TargetContext {
    DriverKind kind;
    const Payoff* payoff;
    const ZbsSource* zbs;
    std::vector<double> beta_dt;  // dt * R C_a sqrt((t_j+delta)^T - t_j) per step j
};

// f(t_j, y, z) * dt given the precomputed per-step IM weight.
inline double driver_increment(const SrmdpWorkspace& w, const TargetContext& tc, double r_dt,
                               int step, double y, const double* z, const double* log_price_args) {
    double f = -r_dt * y;
    if (!w.lambda_zero)
        for (int k = 0; k < w.d; ++k) f += w.dt * z[k] * w.lambda[k];
    switch (tc.kind) {
        case DriverKind::NL: {
            double nz = 0.0;
            for (int k = 0; k < w.d; ++k) nz += z[k] * z[k];
            f += tc.beta_dt[step] * std::sqrt(nz);
            break;
        }
        case DriverKind::DF: {
            const double s = std::exp(log_price_args[0]);
            f += tc.beta_dt[step] * std::fabs(z[0] + (*tc.zbs)(step * w.dt, s));
            break;
        }
        case DriverKind::BS:
            break;
    }
    return f;
}

} // namespace detail

// Stratified regression multistep-forward dynamic programming. At each time
// step the value is regressed, cube by cube, against the forward-simulated
// target  xi + sum_{j>i} f(t_j, y_j(X_j), z_j(X_j)) dt  (paths re-simulated
// from stratified starting points, no re-regression compounding), and Z
// against the same target weighted by dW_i/dt. The implicit own-step driver
// term enters through one fixed-point correction folded into the regressed
// coefficients. Estimates at (0, S_0) come from one conditional-expectation
// step through the t_1 regression; the confidence interval is a normal CI
// over independent batch means.
inline std::vector<BsdeSolution> srmdp_solve_multi(std::span<const Driver> drivers,
                                                   std::span<const Payoff> payoffs,
                                                   const Stratification& strat,
                                                   std::uint64_t seed) {
    if (drivers.empty() || drivers.size() != payoffs.size())
        throw std::invalid_argument("srmdp: need matching driver/payoff lists");
    const MarketParams& market = drivers[0].market;
    const double maturity = drivers[0].maturity;
    const int d = market.dim();
    const int n_targets = static_cast<int>(drivers.size());
    for (const auto& dr : drivers) {
        if (dr.market.dim() != d || dr.maturity != maturity || dr.market.r != market.r ||
            dr.market.sigma != market.sigma || dr.market.mu != market.mu ||
            dr.market.s0 != market.s0)
            throw std::invalid_argument("srmdp: all targets must share market and maturity");
    }
    for (int t = 0; t < n_targets; ++t) {
        const int pd = payoffs[t].kind == PayoffKind::BasketCall ? payoffs[t].dim() : 1;
        if (pd != d) throw std::invalid_argument("srmdp: payoff/market dimension mismatch");
    }
    if (strat.n_time_steps < 2)
        throw std::invalid_argument("srmdp: need at least 2 time steps");
    if (strat.n_batches < 2) throw std::invalid_argument("srmdp: need at least 2 batches");
    if (d > 8) throw std::invalid_argument("srmdp: d > 8 is not supported");
    if (strat.basis == LocalBasis::LP1 && d > 5)
        throw std::invalid_argument("srmdp: LP1 basis supports d <= 5");

    auto w = detail::make_workspace(market, maturity, strat);
    const int nb = strat.n_sims_per_cube / strat.n_batches;
    if (nb < w.n_basis)
        throw std::invalid_argument(
            "srmdp: fewer simulations per cube than the local basis dimension");

    std::vector<detail::TargetContext> targets(n_targets);
    for (int t = 0; t < n_targets; ++t) {
        targets[t].kind = drivers[t].kind;
        targets[t].payoff = &payoffs[t];
        targets[t].zbs = drivers[t].exogenous ? &drivers[t].exogenous : nullptr;
        targets[t].beta_dt.resize(w.n_steps);
        for (int j = 0; j < w.n_steps; ++j)
            targets[t].beta_dt[j] = drivers[t].kind == DriverKind::BS
                                        ? 0.0
                                        : w.dt * drivers[t].im.driver_weight(j * w.dt, maturity);
    }

    const int n_steps = w.n_steps;
    const double r_dt = market.r * w.dt;
    const double sqrt_dt = std::sqrt(w.dt);
    const int nbasis = w.n_basis;
    const int cell_stride = n_targets * (1 + d) * nbasis;
    const auto a0 = market.delta_normalizer();

    // per-step coefficient tables for the current batch; step j in [1, n_steps)
    std::vector<std::vector<double>> table(n_steps);
    for (int j = 1; j < n_steps; ++j)
        table[j].assign(static_cast<std::size_t>(w.n_cells) * cell_stride, 0.0);

    auto y_of = [&](std::vector<double>& tbl, int cell, int t) -> double* {
        return tbl.data() + static_cast<std::size_t>(cell) * cell_stride + t * (1 + d) * nbasis;
    };

    // evaluate stored (y, z) at a path point; LP1 coefficients act on
    // cube-standardized coordinates
    auto eval_cell = [&](const std::vector<double>& tbl, int cell, int t, const double* u,
                         double& y, double* z) {
        const double* base =
            tbl.data() + static_cast<std::size_t>(cell) * cell_stride + t * (1 + d) * nbasis;
        if (nbasis == 1) {
            y = base[0];
            for (int k = 0; k < d; ++k) z[k] = base[1 + k];
            return;
        }
        double coords[8];
        int cc = cell;
        for (int k = d - 1; k >= 0; --k) {
            const int i = cc % w.dims[k];
            cc /= w.dims[k];
            const double center = w.lo[k] + (i + 0.5) * w.width[k];
            coords[k] = (u[k] - center) * (2.0 * w.inv_width[k]);
        }
        y = base[0];
        for (int k = 0; k < d; ++k) y += base[1 + k] * coords[k];
        for (int zk = 0; zk < d; ++zk) {
            const double* zc = base + (1 + zk) * nbasis;
            double v = zc[0];
            for (int k = 0; k < d; ++k) v += zc[1 + k] * coords[k];
            z[zk] = v;
        }
    };

    const std::uint64_t streams_per_batch =
        static_cast<std::uint64_t>(n_steps) * static_cast<std::uint64_t>(w.n_cells) + 1;

    // d = 1 / LP0 / zero risk premium / no exogenous source: the driver sum
    // collapses to -r dt y + beta_dt |z| per target, which the path loop can
    // apply from flat per-step arrays without any dispatch.
    bool fast_path = (d == 1 && nbasis == 1 && w.lambda_zero);
    for (const auto& tc : targets)
        if (tc.kind == DriverKind::DF) fast_path = false;
    std::vector<double> beta_by_step;
    if (fast_path) {
        beta_by_step.resize(static_cast<std::size_t>(n_steps) * n_targets);
        for (int j = 0; j < n_steps; ++j)
            for (int t = 0; t < n_targets; ++t)
                beta_by_step[static_cast<std::size_t>(j) * n_targets + t] = targets[t].beta_dt[j];
    }

    const int n_batches = strat.n_batches;
    std::vector<std::vector<double>> batch_v(n_targets, std::vector<double>(n_batches));
    std::vector<std::vector<double>> batch_z(n_targets,
                                             std::vector<double>(static_cast<std::size_t>(n_batches) * d));

    for (int b = 0; b < n_batches; ++b) {
        for (int j = n_steps - 1; j >= 1; --j) {
#pragma omp parallel for schedule(dynamic, 16)
            for (int cell = 0; cell < w.n_cells; ++cell) {
                RngStream rng(seed, 1 + static_cast<std::uint64_t>(b) * streams_per_batch +
                                        static_cast<std::uint64_t>(j - 1) * w.n_cells + cell);
                std::vector<double> acc(static_cast<std::size_t>(nb) * n_targets);
                std::vector<double> g0(static_cast<std::size_t>(nb) * d);
                std::vector<double> u0s(static_cast<std::size_t>(nb) * d);
                double u[8], g[8], z[8], lp[1];
                for (int p = 0; p < nb; ++p) {
                    double* acc_p = &acc[static_cast<std::size_t>(p) * n_targets];
                    for (int t = 0; t < n_targets; ++t) acc_p[t] = 0.0;
                    // stratified start: uniform within this cube
                    int cc = cell;
                    for (int k = d - 1; k >= 0; --k) {
                        const int i = cc % w.dims[k];
                        cc /= w.dims[k];
                        u0s[static_cast<std::size_t>(p) * d + k] =
                            w.lo[k] + (i + rng.next_uniform()) * w.width[k];
                    }
                    for (int k = 0; k < d; ++k) u[k] = u0s[static_cast<std::size_t>(p) * d + k];
                    if (fast_path) {
                        double u1 = u[0];
                        const double step_c = w.step_mat[0];
                        const double lo0 = w.lo[0], inv_w0 = w.inv_width[0];
                        const int last = w.dims[0] - 1;
                        for (int step = j + 1; step <= n_steps; ++step) {
                            const double gg = rng.next_gaussian();
                            if (step == j + 1) g0[p] = gg;
                            u1 += step_c * gg;
                            if (step == n_steps) break;
                            int ci = static_cast<int>((u1 - lo0) * inv_w0);
                            ci = ci < 0 ? 0 : (ci > last ? last : ci);
                            const double* cellp =
                                table[step].data() + static_cast<std::size_t>(ci) * cell_stride;
                            const double* bstep =
                                beta_by_step.data() + static_cast<std::size_t>(step) * n_targets;
                            for (int t = 0; t < n_targets; ++t)
                                acc_p[t] += bstep[t] * std::fabs(cellp[2 * t + 1]) -
                                            r_dt * cellp[2 * t];
                        }
                        u[0] = u1;
                    } else {
                        for (int step = j + 1; step <= n_steps; ++step) {
                            for (int k = 0; k < d; ++k) g[k] = rng.next_gaussian();
                            if (step == j + 1)
                                for (int k = 0; k < d; ++k)
                                    g0[static_cast<std::size_t>(p) * d + k] = g[k];
                            for (int i = 0; i < d; ++i) {
                                double inc = 0.0;
                                for (int k = 0; k < d; ++k) inc += w.step_mat[i * d + k] * g[k];
                                u[i] += inc;
                            }
                            if (step == n_steps) break;
                            const int c2 = detail::cell_index(w, u);
                            for (int t = 0; t < n_targets; ++t) {
                                double y;
                                eval_cell(table[step], c2, t, u, y, z);
                                if (targets[t].kind == DriverKind::DF)
                                    lp[0] = w.state_log_price(0, step * w.dt, u[0]);
                                acc_p[t] +=
                                    detail::driver_increment(w, targets[t], r_dt, step, y, z, lp);
                            }
                        }
                    }
                    // terminal condition
                    double s_t[8];
                    for (int i = 0; i < d; ++i)
                        s_t[i] = std::exp(w.state_log_price(i, maturity, u[i]));
                    for (int t = 0; t < n_targets; ++t)
                        if (targets[t].kind != DriverKind::DF)
                            acc_p[t] += evaluate(*targets[t].payoff,
                                                 std::span<const double>(s_t, d));
                }

                // local regression per target
                double center[8];
                detail::cell_center(w, cell, center);
                for (int t = 0; t < n_targets; ++t) {
                    double* coef = y_of(table[j], cell, t);
                    if (nbasis == 1) {
                        double ybar = 0.0;
                        for (int p = 0; p < nb; ++p) ybar += acc[static_cast<std::size_t>(p) * n_targets + t];
                        ybar /= nb;
                        for (int k = 0; k < d; ++k) {
                            double zs = 0.0;
                            for (int p = 0; p < nb; ++p)
                                zs += (acc[static_cast<std::size_t>(p) * n_targets + t] - ybar) *
                                      g0[static_cast<std::size_t>(p) * d + k];
                            coef[1 + k] = zs / (nb * sqrt_dt);
                        }
                        // own-step driver via one fixed-point correction
                        if (targets[t].kind == DriverKind::DF)
                            lp[0] = w.state_log_price(0, j * w.dt, center[0]);
                        coef[0] = ybar + detail::driver_increment(w, targets[t], r_dt, j, ybar,
                                                                  coef + 1, lp);
                    } else {
                        // LP1 normal equations on cube-standardized coordinates
                        const int nb_dim = 1 + d;
                        double xtx[36] = {0.0}, xty[6] = {0.0}, xrow[6];
                        for (int p = 0; p < nb; ++p) {
                            xrow[0] = 1.0;
                            for (int k = 0; k < d; ++k)
                                xrow[1 + k] = (u0s[static_cast<std::size_t>(p) * d + k] - center[k]) *
                                              (2.0 * w.inv_width[k]);
                            const double a = acc[static_cast<std::size_t>(p) * n_targets + t];
                            for (int i = 0; i < nb_dim; ++i) {
                                xty[i] += xrow[i] * a;
                                for (int jj = 0; jj <= i; ++jj) xtx[i * nb_dim + jj] += xrow[i] * xrow[jj];
                            }
                        }
                        for (int i = 0; i < nb_dim; ++i)
                            for (int jj = i + 1; jj < nb_dim; ++jj) xtx[i * nb_dim + jj] = xtx[jj * nb_dim + i];
                        std::vector<double> xtx_v(xtx, xtx + nb_dim * nb_dim);
                        std::vector<double> ycoef;
                        try {
                            ycoef = linalg::solve_dense(xtx_v, std::vector<double>(xty, xty + nb_dim),
                                                        nb_dim);
                        } catch (const std::exception&) {
                            throw std::runtime_error("srmdp: singular local regression in cube " +
                                                     std::to_string(cell));
                        }
                        for (int i = 0; i < nb_dim; ++i) coef[i] = ycoef[i];
                        // Z regression with the fitted-value control variate
                        for (int zk = 0; zk < d; ++zk) {
                            double rhsv[6] = {0.0};
                            for (int p = 0; p < nb; ++p) {
                                xrow[0] = 1.0;
                                double fit = ycoef[0];
                                for (int k = 0; k < d; ++k) {
                                    xrow[1 + k] =
                                        (u0s[static_cast<std::size_t>(p) * d + k] - center[k]) *
                                        (2.0 * w.inv_width[k]);
                                    fit += ycoef[1 + k] * xrow[1 + k];
                                }
                                const double wgt =
                                    (acc[static_cast<std::size_t>(p) * n_targets + t] - fit) *
                                    g0[static_cast<std::size_t>(p) * d + zk] / sqrt_dt;
                                for (int i = 0; i < nb_dim; ++i) rhsv[i] += xrow[i] * wgt;
                            }
                            std::vector<double> zc;
                            try {
                                zc = linalg::solve_dense(xtx_v,
                                                         std::vector<double>(rhsv, rhsv + nb_dim),
                                                         nb_dim);
                            } catch (const std::exception&) {
                                throw std::runtime_error(
                                    "srmdp: singular local regression in cube " +
                                    std::to_string(cell));
                            }
                            double* zcoef = coef + (1 + zk) * nbasis;
                            for (int i = 0; i < nb_dim; ++i) zcoef[i] = zc[i];
                        }
                        // own-step correction at the cube center
                        double zc0[8];
                        for (int zk = 0; zk < d; ++zk) zc0[zk] = coef[(1 + zk) * nbasis];
                        if (targets[t].kind == DriverKind::DF)
                            lp[0] = w.state_log_price(0, j * w.dt, center[0]);
                        coef[0] += detail::driver_increment(w, targets[t], r_dt, j, coef[0], zc0,
                                                            lp);
                    }
                }
            }
        }

        // read off (0, S_0) through the t_1 regression; last stream of this batch's slice
        RngStream rng(seed, static_cast<std::uint64_t>(b + 1) * streams_per_batch);
        std::vector<double> tv(static_cast<std::size_t>(nb) * n_targets);
        std::vector<double> g0(static_cast<std::size_t>(nb) * d);
        double u[8], g[8], z[8], lp[1];
        for (int p = 0; p < nb; ++p) {
            for (int k = 0; k < d; ++k) {
                g[k] = rng.next_gaussian();
                g0[static_cast<std::size_t>(p) * d + k] = g[k];
            }
            for (int i = 0; i < d; ++i) {
                double inc = 0.0;
                for (int k = 0; k < d; ++k) inc += w.step_mat[i * d + k] * g[k];
                u[i] = inc;
            }
            const int c2 = detail::cell_index(w, u);
            for (int t = 0; t < n_targets; ++t) {
                double y;
                eval_cell(table[1], c2, t, u, y, z);
                tv[static_cast<std::size_t>(p) * n_targets + t] = y;
            }
        }
        for (int t = 0; t < n_targets; ++t) {
            double mean = 0.0;
            for (int p = 0; p < nb; ++p) mean += tv[static_cast<std::size_t>(p) * n_targets + t];
            mean /= nb;
            double z0[8];
            for (int k = 0; k < d; ++k) {
                double zs = 0.0;
                for (int p = 0; p < nb; ++p)
                    zs += (tv[static_cast<std::size_t>(p) * n_targets + t] - mean) *
                          g0[static_cast<std::size_t>(p) * d + k];
                z0[k] = zs / (nb * sqrt_dt);
            }
            if (targets[t].kind == DriverKind::DF)
                lp[0] = w.state_log_price(0, 0.0, 0.0);
            const double v0 =
                mean + detail::driver_increment(w, targets[t], r_dt, 0, mean, z0, lp);
            batch_v[t][b] = v0;
            for (int k = 0; k < d; ++k) {
                double zk = 0.0;
                for (int i = 0; i < d; ++i) zk += z0[i] * a0[i * d + k];
                batch_z[t][static_cast<std::size_t>(b) * d + k] = zk;
            }
        }
    }

    auto batch_ci = [&](const std::vector<double>& xs, int stride, int offset) {
        double sum = 0.0, sum_sq = 0.0;
        for (int b = 0; b < n_batches; ++b) {
            const double x = xs[static_cast<std::size_t>(b) * stride + offset];
            sum += x;
            sum_sq += x * x;
        }
        McEstimate e = McEstimate::from_moments(sum, sum_sq, n_batches, nb, seed);
        // SE of the batch mean
        e.n_outer = static_cast<long>(n_batches) * nb;
        return e;
    };

    std::vector<BsdeSolution> out(n_targets);
    for (int t = 0; t < n_targets; ++t) {
        out[t].v0 = batch_ci(batch_v[t], 1, 0);
        out[t].z0.resize(d);
        for (int k = 0; k < d; ++k) out[t].z0[k] = batch_ci(batch_z[t], d, k);
    }
    return out;
}

inline BsdeSolution srmdp_solve(const Driver& driver, const Payoff& payoff,
                                const Stratification& strat, std::uint64_t seed) {
    return srmdp_solve_multi(std::span<const Driver>(&driver, 1),
                             std::span<const Payoff>(&payoff, 1), strat, seed)[0];
}

} // namespace mbsde
