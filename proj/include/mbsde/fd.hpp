#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mbsde/black_scholes.hpp"
#include "mbsde/market.hpp"
#include "mbsde/payoff.hpp"
#include "mbsde/tridiag.hpp"

namespace mbsde {

// Uniform log-space mesh for the omega-scheme; omega = 0.5 is Crank-Nicolson.
struct FdGrid {
    double x_min = 0.0;
    double x_max = 0.0;
    int num_space = 0;  // M spatial intervals
    int num_time = 0;   // N time intervals
    double omega = 0.5;
    double maturity = 1.0;

    FdGrid() = default;
    FdGrid(double xmin, double xmax, int m, int n, double om, double t)
        : x_min(xmin), x_max(xmax), num_space(m), num_time(n), omega(om), maturity(t) {
        if (!(x_min < x_max)) throw std::invalid_argument("FdGrid: x_min must be < x_max");
        if (num_space < 2 || num_time < 2) throw std::invalid_argument("FdGrid: M, N must be >= 2");
        if (!(omega >= 0.0 && omega <= 1.0)) throw std::invalid_argument("FdGrid: omega in [0,1]");
        if (!(maturity > 0.0)) throw std::invalid_argument("FdGrid: maturity must be positive");
    }

    // Paper domain [ln 1e-6, ln 4K] with the production mesh.
    static FdGrid standard(double strike, double maturity = 1.0, int m = 4000, int n = 1000,
                           double omega = 0.5) {
        return FdGrid(std::log(1e-6), std::log(4.0 * strike), m, n, omega, maturity);
    }

    double dx() const { return (x_max - x_min) / num_space; }
    double dt() const { return maturity / num_time; }
    double x_at(int i) const { return x_min + i * dx(); }
};

// First-derivative stencil for the convection term. OneSided matches the
// scheme as printed (forward difference); Central trades that fidelity for
// second-order accuracy in space.
enum class ConvectionScheme { OneSided, Central };

struct FdOptions {
    ConvectionScheme convection = ConvectionScheme::OneSided;
    bool keep_surface = false;
};

class FdSolution {
public:
    FdSolution(FdGrid grid, std::vector<double> t0_slice, std::optional<std::vector<double>> surface)
        : grid_(grid), t0_(std::move(t0_slice)), surface_(std::move(surface)) {}

    const FdGrid& grid() const { return grid_; }
    const std::vector<double>& t0_slice() const { return t0_; }
    bool has_surface() const { return surface_.has_value(); }

    // Row n of the stored surface is the slice at t_n (row 0 = valuation time).
    std::span<const double> slice(int n) const {
        if (!surface_) throw std::logic_error("FdSolution: surface was not stored");
        return {surface_->data() + static_cast<std::size_t>(n) * (grid_.num_space + 1),
                static_cast<std::size_t>(grid_.num_space + 1)};
    }

    double price_at(double s) const { return interp_value(t0_, s); }

    // dV/dS = (dv/dx) / S with a central difference in x on the t = 0 slice.
    double delta_at(double s) const {
        const double x = std::log(s);
        const double dx = grid_.dx();
        const int m = grid_.num_space;
        auto grad = [&](int i) {
            if (i <= 0) return (t0_[1] - t0_[0]) / dx;
            if (i >= m) return (t0_[m] - t0_[m - 1]) / dx;
            return (t0_[i + 1] - t0_[i - 1]) / (2.0 * dx);
        };
        const double pos = (x - grid_.x_min) / dx;
        int i = static_cast<int>(std::floor(pos));
        i = std::max(0, std::min(i, m - 1));
        const double w = pos - i;
        return ((1.0 - w) * grad(i) + w * grad(i + 1)) / s;
    }

private:
    double interp_value(const std::vector<double>& slice, double s) const {
        const double x = std::log(s);
        const double dx = grid_.dx();
        const int m = grid_.num_space;
        const double pos = (x - grid_.x_min) / dx;
        if (pos <= 0.0) return slice[0];
        if (pos >= m) return slice[m];
        const int i = static_cast<int>(pos);
        const double w = pos - i;
        return (1.0 - w) * slice[i] + w * slice[i + 1];
    }

    FdGrid grid_;
    std::vector<double> t0_;
    std::optional<std::vector<double>> surface_;
};

// Exogenous |Z| source for the linearized equation: returns Z^BS(t, s).
using ZbsSource = std::function<double(double t, double s)>;

inline ZbsSource make_bs_delta_source(const Payoff& payoff, const MarketParams& market,
                                      double maturity) {
    return [payoff, market, maturity](double t, double s) {
        return bs_delta_superposition(payoff, s, t, market, maturity);
    };
}

namespace detail {

struct FdProblem {
    double r = 0.0;
    double sigma = 0.0;
    const Payoff* payoff = nullptr;
    const ImParams* im = nullptr;
    const FdGrid* grid = nullptr;
    FdOptions opts;
    bool nonlinear = true;        // beta^n |v_{i+1} - v_i| term, else zbs source
    const ZbsSource* zbs = nullptr;
};

// Upper Dirichlet value; calls get the dividend-adjusted forward intrinsic,
// everything else decays to the discounted payoff at the boundary.
inline double upper_boundary(const FdProblem& pb, double t) {
    const double s_max = std::exp(pb.grid->x_max);
    const double tau = pb.grid->maturity - t;
    if (pb.payoff->kind == PayoffKind::Call) {
        const auto curve = DividendCurve::for_option(PayoffKind::Call, *pb.im, pb.sigma,
                                                     pb.grid->maturity);
        const double d_tail = pb.im->spread > 0.0 ? dividend_integral(curve, t, pb.grid->maturity)
                                                  : 0.0;
        return s_max * std::exp(-d_tail) - pb.payoff->strike * std::exp(-pb.r * tau);
    }
    return evaluate(*pb.payoff, s_max) * std::exp(-pb.r * tau);
}

inline double lower_boundary(const FdProblem& pb, double t) {
    const double tau = pb.grid->maturity - t;
    return evaluate(*pb.payoff, std::exp(pb.grid->x_min)) * std::exp(-pb.r * tau);
}

// Backward omega-scheme march. The step callback receives (n, slice at t_n)
// after each solve; slice rows follow the printed tridiagonal system.
template <typename StepFn>
void fd_march(const FdProblem& pb, std::vector<double>& v, StepFn&& on_step) {
    const FdGrid& g = *pb.grid;
    const int m = g.num_space;
    const double dx = g.dx();
    const double dt = g.dt();
    const double om = g.omega;
    const double theta = pb.sigma * pb.sigma * dt / (2.0 * dx * dx);
    const double kappa = (pb.r - 0.5 * pb.sigma * pb.sigma) * dt / dx;
    const double rho = pb.r * dt;
    const bool central = pb.opts.convection == ConvectionScheme::Central;

    // A v^n = b^{n+1}: boundary rows are identities carrying Dirichlet data.
    std::vector<double> lower(m), diag(m + 1), upper(m), rhs(m + 1);
    const double up_c = central ? theta + 0.5 * kappa : theta + kappa;
    const double lo_c = central ? theta - 0.5 * kappa : theta;
    const double di_c = central ? 2.0 * theta + rho : 2.0 * theta + kappa + rho;
    diag[0] = 1.0;
    diag[m] = 1.0;
    upper[0] = 0.0;
    lower[m - 1] = 0.0;
    for (int i = 1; i < m; ++i) {
        diag[i] = 1.0 + di_c * om;
        upper[i] = -up_c * om;
        lower[i - 1] = -lo_c * om;
    }

    std::vector<double> s_nodes(m + 1);
    for (int i = 0; i <= m; ++i) s_nodes[i] = std::exp(g.x_at(i));

    for (int n = g.num_time - 1; n >= 0; --n) {
        const double t_n = n * dt;
        const double t_np1 = (n + 1) * dt;
        // R C_alpha sqrt((t_n + delta) ^ T - t_n), the IM weight at this step
        const double weight = pb.im->driver_weight(t_n, g.maturity);
        const double beta = weight * pb.sigma * dt / dx;
        for (int i = 1; i < m; ++i) {
            double b = lo_c * (1.0 - om) * v[i - 1] + (1.0 - di_c * (1.0 - om)) * v[i] +
                       up_c * (1.0 - om) * v[i + 1];
            if (pb.nonlinear)
                b += beta * std::fabs(v[i + 1] - v[i]);
            else
                b += dt * weight * std::fabs((*pb.zbs)(t_np1, s_nodes[i]));
            rhs[i] = b;
        }
        rhs[0] = lower_boundary(pb, t_n);
        rhs[m] = upper_boundary(pb, t_n);
        v = thomas_solve(lower, diag, upper, rhs);
        on_step(n, v);
    }
}

inline FdSolution run_fd(const FdProblem& pb) {
    const FdGrid& g = *pb.grid;
    std::vector<double> v(g.num_space + 1);
    for (int i = 0; i <= g.num_space; ++i) v[i] = evaluate(*pb.payoff, std::exp(g.x_at(i)));

    std::optional<std::vector<double>> surface;
    if (pb.opts.keep_surface) {
        surface.emplace(static_cast<std::size_t>(g.num_time + 1) * (g.num_space + 1));
        std::copy(v.begin(), v.end(),
                  surface->begin() + static_cast<std::size_t>(g.num_time) * (g.num_space + 1));
    }
    fd_march(pb, v, [&](int n, const std::vector<double>& slice) {
        if (surface)
            std::copy(slice.begin(), slice.end(),
                      surface->begin() + static_cast<std::size_t>(n) * (g.num_space + 1));
    });
    return FdSolution(g, std::move(v), std::move(surface));
}

inline void check_fd_inputs(const MarketParams& market, const Payoff& payoff, const FdGrid& grid) {
    if (market.dim() != 1) throw std::invalid_argument("fd solver: requires d = 1");
    if (payoff.kind == PayoffKind::BasketCall)
        throw std::invalid_argument("fd solver: basket payoffs are not supported");
    if (grid.num_space < 4 || grid.num_time < 2)
        throw std::invalid_argument("fd solver: grid too coarse (need M >= 4, N >= 2)");
}

} // namespace detail

// Semi-linear IM pricing PDE in log space, nonlinearity treated explicitly:
// the rhs carries beta^n |v_{i+1}^{n+1} - v_i^{n+1}|.
inline FdSolution solve_nl_pde(const MarketParams& market, const ImParams& im,
                               const Payoff& payoff, const FdGrid& grid, FdOptions opts = {}) {
    detail::check_fd_inputs(market, payoff, grid);
    detail::FdProblem pb;
    pb.r = market.r;
    pb.sigma = market.vol1();
    pb.payoff = &payoff;
    pb.im = &im;
    pb.grid = &grid;
    pb.opts = opts;
    pb.nonlinear = true;
    return detail::run_fd(pb);
}

// Linearized equation: same scheme with the gradient term replaced by the
// exogenous source R C_alpha sqrt((t+delta)^T - t) |Z^BS(t, s)|.
inline FdSolution solve_l_pde(const MarketParams& market, const ImParams& im, const Payoff& payoff,
                              const FdGrid& grid, const ZbsSource& source_delta,
                              FdOptions opts = {}) {
    detail::check_fd_inputs(market, payoff, grid);
    if (!source_delta) throw std::invalid_argument("solve_l_pde: source_delta is required");
    detail::FdProblem pb;
    pb.r = market.r;
    pb.sigma = market.vol1();
    pb.payoff = &payoff;
    pb.im = &im;
    pb.grid = &grid;
    pb.opts = opts;
    pb.nonlinear = false;
    pb.zbs = &source_delta;
    return detail::run_fd(pb);
}

struct ConvergenceRow {
    double delta = 0.0;
    double gap_l_bs = 0.0;  // sup |V^L - V^BS| over the state box
    double gap_nl_l = 0.0;  // sup |V^NL - V^L|
};

struct ConvergenceStudy {
    std::vector<ConvergenceRow> rows;
    double slope_l_bs = 0.0;
    double slope_nl_l = 0.0;
};

namespace detail {

inline double fit_log_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(xs[i]);
        const double ly = std::log(ys[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace detail

// Empirical orders for the Theorem-3 gaps. The three equations (BS, L, NL)
// march on one mesh, with the L source built from the one-sided gradient of
// the discrete BS surface so the scheme error cancels in the differences.
// Gaps are sup-norms over grid nodes with S in [s_lo_frac, s_hi_frac] * S0,
// over all time slices.
inline ConvergenceStudy convergence_study(const Payoff& payoff, const MarketParams& market,
                                          const ImParams& im_template,
                                          std::span<const double> deltas, const FdGrid& grid,
                                          double s_lo_frac = 0.7, double s_hi_frac = 1.3) {
    detail::check_fd_inputs(market, payoff, grid);
    if (deltas.size() < 3)
        throw std::invalid_argument("convergence_study: need at least 3 delta values");
    for (double d : deltas)
        if (!(d > 0.0 && d <= grid.maturity))
            throw std::invalid_argument("convergence_study: delta values must lie in (0, T]");

    const int m = grid.num_space;
    const double dx = grid.dx();
    const double dt = grid.dt();
    const double om = grid.omega;
    const double r = market.r;
    const double sigma = market.vol1();
    const double theta = sigma * sigma * dt / (2.0 * dx * dx);
    const double kappa = (r - 0.5 * sigma * sigma) * dt / dx;
    const double rho = r * dt;
    const double up_c = theta + 0.5 * kappa;  // central convection throughout
    const double lo_c = theta - 0.5 * kappa;
    const double di_c = 2.0 * theta + rho;

    std::vector<double> lower(m), diag(m + 1), upper(m);
    diag[0] = diag[m] = 1.0;
    upper[0] = 0.0;
    lower[m - 1] = 0.0;
    for (int i = 1; i < m; ++i) {
        diag[i] = 1.0 + di_c * om;
        upper[i] = -up_c * om;
        lower[i - 1] = -lo_c * om;
    }

    const double s0 = market.s0[0];
    int box_lo = m, box_hi = 0;
    for (int i = 0; i <= m; ++i) {
        const double s = std::exp(grid.x_at(i));
        if (s >= s_lo_frac * s0 && s <= s_hi_frac * s0) {
            box_lo = std::min(box_lo, i);
            box_hi = std::max(box_hi, i);
        }
    }
    if (box_lo > box_hi) throw std::invalid_argument("convergence_study: state box misses the grid");

    ConvergenceStudy study;
    for (double delta : deltas) {
        const ImParams im(im_template.spread, im_template.alpha, delta);
        std::vector<double> terminal(m + 1);
        for (int i = 0; i <= m; ++i) terminal[i] = evaluate(payoff, std::exp(grid.x_at(i)));
        std::vector<double> vbs = terminal, vl = terminal, vnl = terminal;
        std::vector<double> rhs(m + 1);
        double gap1 = 0.0, gap2 = 0.0;

        const auto curve_sign = payoff.kind == PayoffKind::Put ? 1.0 : -1.0;
        for (int n = grid.num_time - 1; n >= 0; --n) {
            const double t_n = n * dt;
            const double beta = im.c_alpha * im.spread * sigma * dt *
                                std::sqrt(std::min(t_n + delta, grid.maturity) - t_n) / dx;
            auto explicit_part = [&](const std::vector<double>& v, int i) {
                return lo_c * (1.0 - om) * v[i - 1] + (1.0 - di_c * (1.0 - om)) * v[i] +
                       up_c * (1.0 - om) * v[i + 1];
            };
            const double tau = grid.maturity - t_n;
            const double low_bc = evaluate(payoff, std::exp(grid.x_min)) * std::exp(-r * tau);
            const double up_plain = payoff.kind == PayoffKind::Call
                                        ? std::exp(grid.x_max) - payoff.strike * std::exp(-r * tau)
                                        : evaluate(payoff, std::exp(grid.x_max)) * std::exp(-r * tau);
            const double d_tail = curve_sign * im.c_alpha * im.spread * sigma *
                                  detail::sqrt_horizon_integral(t_n, grid.maturity, grid.maturity,
                                                                delta);
            const double up_im = payoff.kind == PayoffKind::Call
                                     ? std::exp(grid.x_max) * std::exp(-d_tail) -
                                           payoff.strike * std::exp(-r * tau)
                                     : up_plain;

            // BS
            for (int i = 1; i < m; ++i) rhs[i] = explicit_part(vbs, i);
            rhs[0] = low_bc;
            rhs[m] = up_plain;
            auto next_bs = thomas_solve(lower, diag, upper, rhs);

            // L: one-sided gradient of the discrete BS surface at t^{n+1}
            for (int i = 1; i < m; ++i)
                rhs[i] = explicit_part(vl, i) + beta * std::fabs(vbs[i + 1] - vbs[i]);
            rhs[0] = low_bc;
            rhs[m] = up_im;
            auto next_l = thomas_solve(lower, diag, upper, rhs);

            // NL
            for (int i = 1; i < m; ++i)
                rhs[i] = explicit_part(vnl, i) + beta * std::fabs(vnl[i + 1] - vnl[i]);
            rhs[0] = low_bc;
            rhs[m] = up_im;
            auto next_nl = thomas_solve(lower, diag, upper, rhs);

            vbs = std::move(next_bs);
            vl = std::move(next_l);
            vnl = std::move(next_nl);
            for (int i = box_lo; i <= box_hi; ++i) {
                gap1 = std::max(gap1, std::fabs(vl[i] - vbs[i]));
                gap2 = std::max(gap2, std::fabs(vnl[i] - vl[i]));
            }
        }
        study.rows.push_back({delta, gap1, gap2});
    }

    std::vector<double> xs, g1, g2;
    for (const auto& row : study.rows) {
        xs.push_back(row.delta);
        g1.push_back(row.gap_l_bs);
        g2.push_back(row.gap_nl_l);
    }
    study.slope_l_bs = detail::fit_log_slope(xs, g1);
    study.slope_nl_l = detail::fit_log_slope(xs, g2);
    return study;
}

} // namespace mbsde
