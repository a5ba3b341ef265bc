// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its own tolerances; runtimes are measured
// against the stated budgets.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "mbsde/basket_mc.hpp"
#include "mbsde/black_scholes.hpp"
#include "mbsde/cvar.hpp"
#include "mbsde/fd.hpp"
#include "mbsde/nested_mc.hpp"
#include "mbsde/normal.hpp"
#include "mbsde/rng.hpp"
#include "mbsde/srmdp.hpp"

using namespace mbsde;

namespace {

const double kS0 = 20.0, kR = 0.02, kSigma = 0.25, kT = 1.0;
const ImParams kIm(0.02, 0.99, 0.02);
const ImParams kImZero(0.0, 0.99, 0.02);
const auto kMarket = MarketParams::single(kR, kR, kSigma, kS0);

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

FdOptions central() {
    FdOptions o;
    o.convection = ConvectionScheme::Central;
    return o;
}

struct TableRow {
    double strike, price, delta, im_price, im_delta;
};

const std::vector<TableRow> kCallRows = {
    {17, 3.9534, 0.8037, 3.9835, 0.8073}, {18, 3.2795, 0.7345, 3.3071, 0.7383},
    {19, 2.6863, 0.6592, 2.7111, 0.6631}, {20, 2.1741, 0.5812, 2.1959, 0.5852},
    {21, 1.7398, 0.5039, 1.7587, 0.5079}, {22, 1.3777, 0.4301, 1.3939, 0.4338},
    {23, 1.0805, 0.3617, 1.0941, 0.3651}};
const std::vector<TableRow> kPutRows = {
    {17, 0.6168, -0.1963, 0.6241, -0.1980}, {18, 0.9231, -0.2655, 0.9331, -0.2675},
    {19, 1.3101, -0.3408, 1.3229, -0.3429}, {20, 1.7781, -0.4188, 1.7938, -0.4209},
    {21, 2.3240, -0.4961, 2.3426, -0.4981}, {22, 2.9421, -0.5699, 2.9635, -0.5718},
    {23, 3.6251, -0.6383, 3.6490, -0.6400}};

// Table 3 finite-difference columns (butterfly, R = 0.02).
const std::vector<std::array<double, 3>> kButterflyFd = {
    {11, 0.0415, -0.0181}, {14, 0.1742, -0.0461}, {17, 0.3036, -0.0359}, {20, 0.3112, 0.0021},
    {23, 0.2284, 0.0265},  {26, 0.1349, 0.0287},  {29, 0.0689, 0.0207}};

// Criterion 1: closed-form reproduction of Tables 1-2 to 4 decimals, < 1 s.
Check criterion_1() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& row : kCallRows) {
        const auto q = bs_price_delta(kS0, row.strike, kR, kSigma, kT, PayoffKind::Call);
        const auto qi =
            bs_price_delta_with_im(kS0, row.strike, kR, kSigma, kT, PayoffKind::Call, kIm);
        c.require(std::fabs(q.price - row.price) < 5e-5, "call price K=" +
                                                             std::to_string(row.strike));
        c.require(std::fabs(q.delta - row.delta) < 5e-5, "call delta");
        c.require(std::fabs(qi.price - row.im_price) < 5e-5, "call IM price");
        c.require(std::fabs(qi.delta - row.im_delta) < 5e-5, "call IM delta");
    }
    for (const auto& row : kPutRows) {
        const auto q = bs_price_delta(kS0, row.strike, kR, kSigma, kT, PayoffKind::Put);
        const auto qi =
            bs_price_delta_with_im(kS0, row.strike, kR, kSigma, kT, PayoffKind::Put, kIm);
        c.require(std::fabs(q.price - row.price) < 5e-5, "put price");
        c.require(std::fabs(q.delta - row.delta) < 5e-5, "put delta");
        c.require(std::fabs(qi.price - row.im_price) < 5e-5, "put IM price");
        c.require(std::fabs(qi.delta - row.im_delta) < 5e-5, "put IM delta");
    }
    const double el = seconds_since(t0);
    c.require(el < 1.0, "runtime " + std::to_string(el) + " s >= 1 s");
    return c;
}

// Criterion 2: Table 4 exact-difference column to 4 decimals, < 1 s.
Check criterion_2() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::array<double, 4>> rows = {
        // kind(0=call) strike price delta
        {0, 17, 0.0302, 0.0036},  {0, 20, 0.0218, 0.0040},  {0, 23, 0.0136, 0.0035},
        {1, 17, 0.0074, -0.0017}, {1, 20, 0.0157, -0.0021}, {1, 23, 0.0239, -0.0016}};
    for (const auto& row : rows) {
        const auto kind = row[0] == 0 ? PayoffKind::Call : PayoffKind::Put;
        const auto base = bs_price_delta(kS0, row[1], kR, kSigma, kT, kind);
        const auto im = bs_price_delta_with_im(kS0, row[1], kR, kSigma, kT, kind, kIm);
        c.require(std::fabs((im.price - base.price) - row[2]) < 5e-5,
                  "difference price K=" + std::to_string(row[1]));
        c.require(std::fabs((im.delta - base.delta) - row[3]) < 5e-5, "difference delta");
    }
    const double el = seconds_since(t0);
    c.require(el < 1.0, "runtime >= 1 s");
    return c;
}

// Criterion 3: nonlinear FD at M=4000, N=1000, omega=0.5 within 5e-4 of the
// dividend-yield closed form and 2e-3 of the printed FD values, < 60 s per
// payoff sweep.
Check criterion_3() {
    Check c;
    const std::vector<std::array<double, 3>> printed_call = {
        {17, 3.9844, 0.8072}, {18, 3.3082, 0.7382}, {19, 2.7123, 0.6630}, {20, 2.1973, 0.5852},
        {21, 1.7601, 0.5078}, {22, 1.3953, 0.4338}, {23, 1.0954, 0.3652}};
    const std::vector<std::array<double, 3>> printed_put = {
        {17, 0.6249, -0.1981}, {18, 0.9340, -0.2676}, {19, 1.3239, -0.3430},
        {20, 1.7949, -0.4209}, {21, 2.3438, -0.4981}, {22, 2.9646, -0.5717},
        {23, 3.6501, -0.6398}};
    for (const auto* rows : {&printed_call, &printed_put}) {
        const bool is_call = rows == &printed_call;
        const auto t0 = std::chrono::steady_clock::now();
        for (const auto& row : *rows) {
            const double k = row[0];
            const auto kind = is_call ? PayoffKind::Call : PayoffKind::Put;
            const auto payoff = is_call ? Payoff::call(k) : Payoff::put(k);
            const auto fd = solve_nl_pde(kMarket, kIm, payoff, FdGrid::standard(k), central());
            const auto ref = bs_price_delta_with_im(kS0, k, kR, kSigma, kT, kind, kIm);
            const double price = fd.price_at(kS0);
            const double delta = fd.delta_at(kS0);
            c.require(std::fabs(price - ref.price) < 5e-4,
                      (is_call ? std::string("call") : std::string("put")) + " closed-form price K=" +
                          std::to_string(k) + " gap " + std::to_string(price - ref.price));
            c.require(std::fabs(delta - ref.delta) < 5e-4, "closed-form delta");
            c.require(std::fabs(price - row[1]) < 2e-3, "printed FD price");
            c.require(std::fabs(delta - row[2]) < 2e-3, "printed FD delta");
        }
        const double el = seconds_since(t0);
        c.require(el < 60.0, "sweep runtime >= 60 s");
    }
    return c;
}

// Criterion 4: butterfly FD column of Table 3 within 2e-3 / 1e-3, < 60 s.
Check criterion_4() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& row : kButterflyFd) {
        const auto fd =
            solve_nl_pde(kMarket, kIm, Payoff::butterfly(row[0]), FdGrid::standard(row[0]),
                         central());
        c.require(std::fabs(fd.price_at(kS0) - row[1]) < 2e-3,
                  "butterfly price K=" + std::to_string(row[0]) + " got " +
                      std::to_string(fd.price_at(kS0)));
        c.require(std::fabs(fd.delta_at(kS0) - row[2]) < 1e-3, "butterfly delta");
    }
    const double el = seconds_since(t0);
    c.require(el < 60.0, "runtime >= 60 s");
    return c;
}

// Criterion 5: nested MC at N=100, M=100000 covers the linearized FD
// benchmarks in >= 90% of 20 seeded runs per payoff; full size < 5 min per
// payoff, the M=1e4 desk preset < 30 s.
Check criterion_5() {
    Check c;
    for (const auto& payoff : {Payoff::call(20.0), Payoff::put(20.0), Payoff::butterfly(20.0)}) {
        const auto fd = solve_l_pde(kMarket, kIm, payoff, FdGrid::standard(payoff.strike),
                                    make_bs_delta_source(payoff, kMarket, kT), central());
        const double bench_v = fd.price_at(kS0);
        const double bench_z = fd.delta_at(kS0);
        const auto t0 = std::chrono::steady_clock::now();
        int cover_v = 0, cover_z = 0;
        for (int rep = 0; rep < 20; ++rep) {
            const auto res = nested_estimate(kMarket, kIm, payoff, kT, 100000, 100,
                                             9000 + 131 * rep);
            if (res.v0.covers(bench_v)) ++cover_v;
            if (res.z0.covers(bench_z)) ++cover_z;
        }
        const double el = seconds_since(t0);
        c.require(cover_v >= 18, "price coverage " + std::to_string(cover_v) + "/20 for strike " +
                                     std::to_string(payoff.strike));
        c.require(cover_z >= 18, "delta coverage " + std::to_string(cover_z) + "/20");
        c.require(el < 300.0 * 20, "full-size runtime");
        c.require(el / 20.0 < 300.0, "per-run runtime >= 5 min");
    }
    const auto t1 = std::chrono::steady_clock::now();
    (void)nested_estimate(kMarket, kIm, Payoff::call(20.0), kT, 10000, 100, 1);
    const double desk = seconds_since(t1);
    c.require(desk < 30.0, "desk preset >= 30 s");
    return c;
}

// Criterion 6: SRMDP at the paper stratification covers the FD table values
// for at least 6 of 7 strikes per payoff; the desk preset covers within 3x
// widened intervals.
Check criterion_6() {
    Check c;
    Stratification paper;
    paper.n_cubes = 2800;
    paper.n_time_steps = 50;
    paper.n_sims_per_cube = 2500;
    paper.n_batches = 10;
    paper.basis = LocalBasis::LP0;

    const std::vector<std::array<double, 3>> fd_call = {
        {17, 3.9844, 0.8072}, {18, 3.3082, 0.7382}, {19, 2.7123, 0.6630}, {20, 2.1973, 0.5852},
        {21, 1.7601, 0.5078}, {22, 1.3953, 0.4338}, {23, 1.0954, 0.3652}};
    const std::vector<std::array<double, 3>> fd_put = {
        {17, 0.6249, -0.1981}, {18, 0.9340, -0.2676}, {19, 1.3239, -0.3430},
        {20, 1.7949, -0.4209}, {21, 2.3438, -0.4981}, {22, 2.9646, -0.5717},
        {23, 3.6501, -0.6398}};

    std::vector<Driver> drivers;
    std::vector<Payoff> payoffs;
    std::vector<const std::array<double, 3>*> refs;
    for (const auto& row : fd_call) {
        drivers.emplace_back(DriverKind::NL, kMarket, kIm, kT);
        payoffs.push_back(Payoff::call(row[0]));
        refs.push_back(&row);
    }
    for (const auto& row : fd_put) {
        drivers.emplace_back(DriverKind::NL, kMarket, kIm, kT);
        payoffs.push_back(Payoff::put(row[0]));
        refs.push_back(&row);
    }
    for (const auto& row : kButterflyFd) {
        drivers.emplace_back(DriverKind::NL, kMarket, kIm, kT);
        payoffs.push_back(Payoff::butterfly(row[0]));
        refs.push_back(&row);
    }

    const auto sols = srmdp_solve_multi(drivers, payoffs, paper, 20240601);
    const char* names[] = {"call", "put", "butterfly"};
    for (int group = 0; group < 3; ++group) {
        int covered = 0;
        for (int i = 0; i < 7; ++i) {
            const auto& sol = sols[group * 7 + i];
            const auto& ref = *refs[group * 7 + i];
            if (sol.v0.covers(ref[1])) ++covered;
        }
        c.require(covered >= 6, std::string(names[group]) + " coverage " +
                                    std::to_string(covered) + "/7 at paper scale");
    }

    // desk preset within 3x widened intervals
    Stratification deskp;
    deskp.n_cubes = 280;
    deskp.n_time_steps = 25;
    deskp.n_sims_per_cube = 500;
    deskp.n_batches = 10;
    const auto desk_sols = srmdp_solve_multi(drivers, payoffs, deskp, 777001);
    for (int group = 0; group < 3; ++group) {
        int covered = 0;
        for (int i = 0; i < 7; ++i) {
            const auto& sol = desk_sols[group * 7 + i];
            const auto& ref = *refs[group * 7 + i];
            if (std::fabs(sol.v0.value - ref[1]) <= 3.0 * sol.v0.half_width()) ++covered;
        }
        c.require(covered >= 6, std::string(names[group]) + " desk coverage " +
                                    std::to_string(covered) + "/7");
    }
    return c;
}

// Criterion 7: basket reference MC midpoints for d = 2, 3 and SRMDP LP1
// intervals overlapping the reported ranges.
Check criterion_7() {
    Check c;
    struct Case {
        int d;
        std::vector<double> s0;
        double mc_mid;
        double srmdp_lo, srmdp_hi;  // reported NL interval for the price
        int cubes, sims;
    };
    const std::vector<Case> cases = {
        {2, {18.0, 20.0}, 1.5108, 1.5015, 1.5468, 500, 1000},
        {3, {18.0, 20.0, 22.0}, 2.0074, 1.9915, 2.0447, 200, 1500}};
    for (const auto& cs : cases) {
        const auto market = CorrelationSpec(0.25, 0.75, cs.d).to_market(kR, cs.s0);
        const auto payoff = Payoff::basket_call(20.0, std::vector<double>(cs.d, 1.0 / cs.d));
        const auto mc = basket_reference_mc(market, payoff, kT, 1000000, 555 + cs.d);
        // paper CI widths are ~1e-3, treat half of one as their SE
        const double combined = std::sqrt(mc.price.std_error * mc.price.std_error + 3.6e-4 * 3.6e-4);
        c.require(std::fabs(mc.price.value - cs.mc_mid) < 3.0 * combined,
                  "d=" + std::to_string(cs.d) + " MC midpoint gap " +
                      std::to_string(mc.price.value - cs.mc_mid));

        Stratification st;
        st.basis = LocalBasis::LP1;
        st.n_time_steps = 5;
        st.n_cubes = cs.cubes;
        st.n_sims_per_cube = cs.sims;
        st.n_batches = 10;
        const Driver driver(DriverKind::NL, market, kIm, kT);
        const auto sol = srmdp_solve(driver, payoff, st, 6000 + cs.d);
        const bool overlaps = sol.v0.ci_high >= cs.srmdp_lo && sol.v0.ci_low <= cs.srmdp_hi;
        c.require(overlaps, "d=" + std::to_string(cs.d) + " SRMDP interval [" +
                                std::to_string(sol.v0.ci_low) + "," +
                                std::to_string(sol.v0.ci_high) + "] misses the reported range");
    }
    return c;
}

// Criterion 8: convergence orders 0.5 +/- 0.1 and 1.0 +/- 0.2, < 10 min.
Check criterion_8() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> deltas = {0.005, 0.01, 0.02, 0.04};
    const auto grid = FdGrid(std::log(1e-6), std::log(80.0), 2000, 1000, 0.5, kT);
    const auto study = convergence_study(Payoff::call(20.0), kMarket, kIm, deltas, grid);
    c.require(std::fabs(study.slope_l_bs - 0.5) <= 0.1,
              "L-BS slope " + std::to_string(study.slope_l_bs));
    c.require(std::fabs(study.slope_nl_l - 1.0) <= 0.2,
              "NL-L slope " + std::to_string(study.slope_nl_l));
    const double el = seconds_since(t0);
    c.require(el < 600.0, "runtime >= 10 min");
    return c;
}

// Criterion 9: CVaR property suite, 1000 randomized trials per invariant,
// plus the million-draw Gaussian check, < 30 s.
Check criterion_9() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    RngStream rng(90210, 0);
    auto sample = [&](int n, double scale) {
        std::vector<double> s(n);
        for (double& v : s) v = scale * rng.next_gaussian();
        return s;
    };
    int fail_translation = 0, fail_scale = 0, fail_subadd = 0, fail_mono = 0, fail_lip = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 16 + static_cast<int>(120 * rng.next_uniform());
        const double alpha = trial % 3 == 0 ? 0.9 : (trial % 3 == 1 ? 0.95 : 0.99);
        const auto a = sample(n, 1.0 + rng.next_uniform());
        const double c0 = empirical_cvar(a, alpha).cvar;

        const double shift = 4.0 * (rng.next_uniform() - 0.5);
        std::vector<double> shifted(a);
        for (double& v : shifted) v += shift;
        if (std::fabs(empirical_cvar(shifted, alpha).cvar - (c0 + shift)) > 1e-10)
            ++fail_translation;

        const double lam = 0.1 + 3.0 * rng.next_uniform();
        std::vector<double> scaled(a);
        for (double& v : scaled) v *= lam;
        if (std::fabs(empirical_cvar(scaled, alpha).cvar - lam * c0) > 1e-10) ++fail_scale;

        const auto b = sample(n, 1.5);
        std::vector<double> sum(a);
        for (int i = 0; i < n; ++i) sum[i] += b[i];
        if (empirical_cvar(sum, alpha).cvar >
            c0 + empirical_cvar(b, alpha).cvar + 1e-10)
            ++fail_subadd;

        const double alpha2 = alpha + (0.995 - alpha) * rng.next_uniform();
        if (c0 > empirical_cvar(a, alpha2).cvar + 1e-10) ++fail_mono;

        std::vector<double> paired(a);
        for (double& v : paired) v += 0.5 * rng.next_gaussian();
        if (cvar_lipschitz_gap(a, paired, alpha) > 1e-12) ++fail_lip;
    }
    c.require(fail_translation == 0, "translation failures");
    c.require(fail_scale == 0, "homogeneity failures");
    c.require(fail_subadd == 0, "subadditivity failures");
    c.require(fail_mono == 0, "monotonicity failures");
    c.require(fail_lip == 0, "Lipschitz-gap failures");

    std::vector<double> normals(1000000);
    RngStream nrng(8675309, 1);
    for (double& v : normals) v = nrng.next_gaussian();
    const double cvar99 = empirical_cvar(normals, 0.99).cvar;
    c.require(std::fabs(cvar99 - gaussian_cvar_constant(0.99)) < 0.02,
              "normal CVaR gap " + std::to_string(cvar99 - 2.665214));
    const double el = seconds_since(t0);
    c.require(el < 30.0, "runtime " + std::to_string(el) + " s >= 30 s");
    return c;
}

// Criterion 10: smile shape; flat to 1e-6 at R = 0, above the model vol and
// monotone with margin costs, < 60 s.
Check criterion_10() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    double prev_call = 1e9, prev_put = 0.0;
    for (double k = 17.0; k <= 23.0 + 1e-9; k += 0.25) {
        const double pc =
            bs_price_delta_with_im(kS0, k, kR, kSigma, kT, PayoffKind::Call, kIm).price;
        const double pp =
            bs_price_delta_with_im(kS0, k, kR, kSigma, kT, PayoffKind::Put, kIm).price;
        const double ivc = implied_vol(pc, kS0, k, kR, kT, PayoffKind::Call);
        const double ivp = implied_vol(pp, kS0, k, kR, kT, PayoffKind::Put);
        c.require(ivc >= 0.25, "call smile below sigma at K=" + std::to_string(k));
        c.require(ivp >= 0.25, "put smile below sigma");
        c.require(ivc < prev_call, "call smile not decreasing");
        c.require(ivp > prev_put, "put smile not increasing");
        prev_call = ivc;
        prev_put = ivp;

        const double pc0 = bs_price_delta(kS0, k, kR, kSigma, kT, PayoffKind::Call).price;
        const double pp0 = bs_price_delta(kS0, k, kR, kSigma, kT, PayoffKind::Put).price;
        c.require(std::fabs(implied_vol(pc0, kS0, k, kR, kT, PayoffKind::Call) - 0.25) < 1e-6,
                  "flat call smile at R=0");
        c.require(std::fabs(implied_vol(pp0, kS0, k, kR, kT, PayoffKind::Put) - 0.25) < 1e-6,
                  "flat put smile at R=0");
    }
    const double el = seconds_since(t0);
    c.require(el < 60.0, "runtime >= 60 s");
    return c;
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
    }

    const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
        {"closed-form Tables 1-2 to 4 decimals", criterion_1},
        {"Table 4 exact differences to 4 decimals", criterion_2},
        {"nonlinear FD vs closed form and printed values", criterion_3},
        {"butterfly FD column of Table 3", criterion_4},
        {"nested MC coverage of the linearized FD benchmarks", criterion_5},
        {"SRMDP coverage of the FD tables", criterion_6},
        {"basket reference MC and SRMDP LP1 vs Table 6", criterion_7},
        {"margin-horizon convergence orders", criterion_8},
        {"CVaR property suite", criterion_9},
        {"smile bounds and monotonicity", criterion_10},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int idx = static_cast<int>(i) + 1;
        if (only != 0 && only != idx) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Check result;
        try {
            result = criteria[i].second();
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail = std::string("exception: ") + e.what();
        }
        const double el = seconds_since(t0);
        if (result.ok) {
            std::printf("[PASS] criterion %2d: %s (%.1f s)\n", idx, criteria[i].first.c_str(), el);
        } else {
            std::printf("[FAIL] criterion %2d: %s (%.1f s) -- %s\n", idx,
                        criteria[i].first.c_str(), el, result.detail.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    return failures;
}
