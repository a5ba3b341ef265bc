#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mbsde/basket_mc.hpp"
#include "mbsde/black_scholes.hpp"
#include "mbsde/cvar.hpp"
#include "mbsde/fd.hpp"
#include "mbsde/market.hpp"
#include "mbsde/nested_mc.hpp"
#include "mbsde/payoff.hpp"
#include "mbsde/srmdp.hpp"

namespace mbsde::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat key=value configuration, '#' starts a comment. Unknown keys are
// rejected against the allowlist of whichever command consumes the file.
class RunConfig {
public:
    RunConfig() = default;

    static RunConfig from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("config: cannot open '" + path + "'");
        RunConfig cfg;
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const auto trimmed = trim(line);
            if (trimmed.empty()) continue;
            const auto eq = trimmed.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config: line " + std::to_string(line_no) +
                                  ": expected key=value");
            const auto key = trim(trimmed.substr(0, eq));
            const auto value = trim(trimmed.substr(eq + 1));
            if (key.empty())
                throw ConfigError("config: line " + std::to_string(line_no) + ": empty key");
            cfg.kv_[key] = value;
        }
        return cfg;
    }

    void set(const std::string& key, const std::string& value) { kv_[key] = value; }

    void validate_keys(const std::set<std::string>& allowed) const {
        for (const auto& [key, _] : kv_)
            if (!allowed.count(key)) throw ConfigError("config: unknown key '" + key + "'");
    }

    double get_double(const std::string& key, double fallback) const {
        const auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        return parse_double(key, it->second);
    }

    long get_long(const std::string& key, long fallback) const {
        const auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        try {
            std::size_t pos = 0;
            const long v = std::stol(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("config: key '" + key + "' is not an integer");
        }
    }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        const auto it = kv_.find(key);
        return it == kv_.end() ? fallback : it->second;
    }

    std::vector<double> get_list(const std::string& key, const std::string& fallback) const {
        const auto it = kv_.find(key);
        const std::string raw = it == kv_.end() ? fallback : it->second;
        std::vector<double> out;
        std::stringstream ss(raw);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto t = trim(item);
            if (t.empty()) continue;
            out.push_back(parse_double(key, t));
        }
        if (out.empty()) throw ConfigError("config: key '" + key + "' has no values");
        return out;
    }

private:
    static std::string trim(const std::string& s) {
        const auto a = s.find_first_not_of(" \t\r\n");
        if (a == std::string::npos) return {};
        const auto b = s.find_last_not_of(" \t\r\n");
        return s.substr(a, b - a + 1);
    }

    static double parse_double(const std::string& key, const std::string& text) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(text, &pos);
            if (pos != text.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("config: key '" + key + "' is not a number");
        }
    }

    std::map<std::string, std::string> kv_;
};

namespace detail {

inline std::string fmt(double v, int decimals = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

struct CommonParams {
    double maturity, sigma, r, alpha, horizon, spread, s0;
    MarketParams market;
    ImParams im;
    ImParams im_zero;
};

inline const std::set<std::string> kCommonKeys = {
    "t", "sigma", "r", "alpha", "delta", "spread", "s0"};

inline CommonParams common_params(const RunConfig& cfg) {
    CommonParams p{};
    p.maturity = cfg.get_double("t", 1.0);
    p.sigma = cfg.get_double("sigma", 0.25);
    p.r = cfg.get_double("r", 0.02);
    p.alpha = cfg.get_double("alpha", 0.99);
    p.horizon = cfg.get_double("delta", 0.02);
    p.spread = cfg.get_double("spread", 0.02);
    p.s0 = cfg.get_double("s0", 20.0);
    p.market = MarketParams::single(p.r, p.r, p.sigma, p.s0);
    p.im = ImParams(p.spread, p.alpha, p.horizon);
    p.im_zero = ImParams(0.0, p.alpha, p.horizon);
    return p;
}

inline FdOptions fd_options(const RunConfig& cfg) {
    const auto scheme = cfg.get_string("fd_scheme", "central");
    FdOptions opts;
    if (scheme == "central")
        opts.convection = ConvectionScheme::Central;
    else if (scheme == "one_sided")
        opts.convection = ConvectionScheme::OneSided;
    else
        throw ConfigError("config: fd_scheme must be 'central' or 'one_sided'");
    return opts;
}

inline Payoff make_vanilla(const std::string& table, double strike) {
    if (table == "call") return Payoff::call(strike);
    if (table == "put") return Payoff::put(strike);
    return Payoff::butterfly(strike);
}

inline Stratification desk_stratification(const RunConfig& cfg) {
    Stratification st;
    st.n_cubes = static_cast<int>(cfg.get_long("srmdp_cubes", 280));
    st.n_time_steps = static_cast<int>(cfg.get_long("srmdp_steps", 25));
    st.n_sims_per_cube = static_cast<int>(cfg.get_long("srmdp_sims", 500));
    st.n_batches = static_cast<int>(cfg.get_long("srmdp_batches", 10));
    return st;
}

} // namespace detail

// Tables 1-3: closed forms, finite differences and an SRMDP confidence
// interval per strike.
inline void cmd_table_vanilla(const std::string& table, const RunConfig& cfg, std::uint64_t seed,
                              std::ostream& out) {
    std::set<std::string> keys = detail::kCommonKeys;
    keys.insert({"strikes", "fd_m", "fd_n", "omega", "fd_scheme", "srmdp_cubes", "srmdp_steps",
                 "srmdp_sims", "srmdp_batches"});
    cfg.validate_keys(keys);
    const auto p = detail::common_params(cfg);
    const bool butterfly = table == "butterfly";
    const auto strikes = cfg.get_list("strikes", butterfly ? "11,14,17,20,23,26,29"
                                                           : "17,18,19,20,21,22,23");
    const int fd_m = static_cast<int>(cfg.get_long("fd_m", 4000));
    const int fd_n = static_cast<int>(cfg.get_long("fd_n", 1000));
    const double omega = cfg.get_double("omega", 0.5);
    const auto opts = detail::fd_options(cfg);
    const auto strat = detail::desk_stratification(cfg);

    std::vector<Driver> drivers;
    std::vector<Payoff> payoffs;
    for (double k : strikes) {
        drivers.emplace_back(DriverKind::NL, p.market, p.im, p.maturity);
        payoffs.push_back(detail::make_vanilla(table, k));
    }
    const auto mc = srmdp_solve_multi(drivers, payoffs, strat, seed);

    if (butterfly)
        out << "k,bs_price,bs_delta,fd_price,fd_delta,mc_v0,mc_v0_lo,mc_v0_hi,"
               "mc_z0,mc_z0_lo,mc_z0_hi\n";
    else
        out << "k,bs_price,bs_delta,bs_im_price,bs_im_delta,fd_price,fd_delta,"
               "mc_v0,mc_v0_lo,mc_v0_hi,mc_z0,mc_z0_lo,mc_z0_hi\n";

    for (std::size_t i = 0; i < strikes.size(); ++i) {
        const double k = strikes[i];
        const auto payoff = payoffs[i];
        const auto grid = FdGrid(std::log(1e-6), std::log(4.0 * k), fd_m, fd_n, omega, p.maturity);
        const auto fd = solve_nl_pde(p.market, p.im, payoff, grid, opts);
        out << detail::fmt(k, 2);
        if (butterfly) {
            const auto a = bs_price_delta(p.s0, k - payoff.wing, p.r, p.sigma, p.maturity,
                                          PayoffKind::Call);
            const auto b = bs_price_delta(p.s0, k, p.r, p.sigma, p.maturity, PayoffKind::Call);
            const auto c = bs_price_delta(p.s0, k + payoff.wing, p.r, p.sigma, p.maturity,
                                          PayoffKind::Call);
            out << ',' << detail::fmt(a.price - 2.0 * b.price + c.price) << ','
                << detail::fmt(a.delta - 2.0 * b.delta + c.delta);
        } else {
            const auto kind = table == "call" ? PayoffKind::Call : PayoffKind::Put;
            const auto bs = bs_price_delta(p.s0, k, p.r, p.sigma, p.maturity, kind);
            const auto bsim = bs_price_delta_with_im(p.s0, k, p.r, p.sigma, p.maturity, kind, p.im);
            out << ',' << detail::fmt(bs.price) << ',' << detail::fmt(bs.delta) << ','
                << detail::fmt(bsim.price) << ',' << detail::fmt(bsim.delta);
        }
        out << ',' << detail::fmt(fd.price_at(p.s0)) << ',' << detail::fmt(fd.delta_at(p.s0));
        const auto& sol = mc[i];
        out << ',' << detail::fmt(sol.v0.value) << ',' << detail::fmt(sol.v0.ci_low) << ','
            << detail::fmt(sol.v0.ci_high);
        // in d = 1 the Z0 A0 components equal the table's Z0/(sigma S0)
        out << ',' << detail::fmt(sol.z0[0].value) << ',' << detail::fmt(sol.z0[0].ci_low) << ','
            << detail::fmt(sol.z0[0].ci_high) << '\n';
    }
}

// Table 4: exact closed-form difference and the SRMDP solve of the
// difference BSDE.
inline void cmd_table_diff(const RunConfig& cfg, std::uint64_t seed, std::ostream& out) {
    std::set<std::string> keys = detail::kCommonKeys;
    keys.insert({"strikes", "srmdp_cubes", "srmdp_steps", "srmdp_sims", "srmdp_batches"});
    cfg.validate_keys(keys);
    const auto p = detail::common_params(cfg);
    const auto strikes = cfg.get_list("strikes", "17,20,23");
    const auto strat = detail::desk_stratification(cfg);

    std::vector<Driver> drivers;
    std::vector<Payoff> payoffs;
    std::vector<std::string> labels;
    for (const char* side : {"call", "put"}) {
        for (double k : strikes) {
            const Payoff payoff = detail::make_vanilla(side, k);
            drivers.emplace_back(p.market, p.im, p.maturity,
                                 make_bs_delta_source(payoff, p.market, p.maturity));
            payoffs.push_back(payoff);
            labels.emplace_back(side);
        }
    }
    const auto mc = srmdp_solve_multi(drivers, payoffs, strat, seed);

    out << "payoff,k,es_price,es_delta,df_v0,df_v0_lo,df_v0_hi,df_z0,df_z0_lo,df_z0_hi\n";
    for (std::size_t i = 0; i < payoffs.size(); ++i) {
        const auto kind = labels[i] == "call" ? PayoffKind::Call : PayoffKind::Put;
        const double k = payoffs[i].strike;
        const auto bs = bs_price_delta(p.s0, k, p.r, p.sigma, p.maturity, kind);
        const auto bsim = bs_price_delta_with_im(p.s0, k, p.r, p.sigma, p.maturity, kind, p.im);
        out << labels[i] << ',' << detail::fmt(k, 2) << ',' << detail::fmt(bsim.price - bs.price)
            << ',' << detail::fmt(bsim.delta - bs.delta) << ',' << detail::fmt(mc[i].v0.value)
            << ',' << detail::fmt(mc[i].v0.ci_low) << ',' << detail::fmt(mc[i].v0.ci_high) << ','
            << detail::fmt(mc[i].z0[0].value) << ',' << detail::fmt(mc[i].z0[0].ci_low) << ','
            << detail::fmt(mc[i].z0[0].ci_high) << '\n';
    }
}

// Table 5: linear-BSDE finite differences against the nested MC estimator.
inline void cmd_table_linear(const RunConfig& cfg, std::uint64_t seed, std::ostream& out) {
    std::set<std::string> keys = detail::kCommonKeys;
    keys.insert({"fd_m", "fd_n", "omega", "fd_scheme", "mc_outer", "mc_inner", "mc_cv",
                 "call_strikes", "put_strikes", "butterfly_strikes"});
    cfg.validate_keys(keys);
    const auto p = detail::common_params(cfg);
    const int fd_m = static_cast<int>(cfg.get_long("fd_m", 4000));
    const int fd_n = static_cast<int>(cfg.get_long("fd_n", 1000));
    const double omega = cfg.get_double("omega", 0.5);
    const auto opts = detail::fd_options(cfg);
    const long n_outer = cfg.get_long("mc_outer", 20000);
    const int n_inner = static_cast<int>(cfg.get_long("mc_inner", 100));
    NestedOptions mc_opts;
    mc_opts.payoff_control_variate = cfg.get_long("mc_cv", 1) != 0;

    struct Row {
        std::string label;
        Payoff payoff;
    };
    std::vector<Row> rows;
    for (double k : cfg.get_list("call_strikes", "17,20,23"))
        rows.push_back({"call", Payoff::call(k)});
    for (double k : cfg.get_list("put_strikes", "17,20,23"))
        rows.push_back({"put", Payoff::put(k)});
    for (double k : cfg.get_list("butterfly_strikes", "11,20,29"))
        rows.push_back({"butterfly", Payoff::butterfly(k)});

    out << "payoff,k,fd_price,fd_delta,mc_v0,mc_v0_lo,mc_v0_hi,mc_z0,mc_z0_lo,mc_z0_hi\n";
    std::uint64_t row_seed = seed;
    for (const auto& row : rows) {
        const auto grid = FdGrid(std::log(1e-6), std::log(4.0 * row.payoff.strike), fd_m, fd_n,
                                 omega, p.maturity);
        const auto fd = solve_l_pde(p.market, p.im, row.payoff, grid,
                                    make_bs_delta_source(row.payoff, p.market, p.maturity), opts);
        const auto mc = nested_estimate(p.market, p.im, row.payoff, p.maturity, n_outer, n_inner,
                                        row_seed++, mc_opts);
        out << row.label << ',' << detail::fmt(row.payoff.strike, 2) << ','
            << detail::fmt(fd.price_at(p.s0)) << ',' << detail::fmt(fd.delta_at(p.s0)) << ','
            << detail::fmt(mc.v0.value) << ',' << detail::fmt(mc.v0.ci_low) << ','
            << detail::fmt(mc.v0.ci_high) << ',' << detail::fmt(mc.z0.value) << ','
            << detail::fmt(mc.z0.ci_low) << ',' << detail::fmt(mc.z0.ci_high) << '\n';
    }
}

// Table 6: crude risk-neutral MC and the SRMDP LP1 solve for basket calls.
inline void cmd_table_basket(const RunConfig& cfg, std::uint64_t seed, std::ostream& out) {
    std::set<std::string> keys = {"t",  "r",    "alpha",      "delta",      "spread",
                                  "k",  "rho",  "sigma0",     "basket_s0",  "mc_paths",
                                  "srmdp_cubes", "srmdp_steps", "srmdp_sims", "srmdp_batches"};
    cfg.validate_keys(keys);
    const double maturity = cfg.get_double("t", 1.0);
    const double r = cfg.get_double("r", 0.02);
    const double alpha = cfg.get_double("alpha", 0.99);
    const double horizon = cfg.get_double("delta", 0.02);
    const double spread = cfg.get_double("spread", 0.02);
    const double strike = cfg.get_double("k", 20.0);
    const double rho = cfg.get_double("rho", 0.75);
    const double sigma0 = cfg.get_double("sigma0", 0.25);
    const auto s0 = cfg.get_list("basket_s0", "18,20");
    const int d = static_cast<int>(s0.size());
    const long n_paths = cfg.get_long("mc_paths", 1000000);

    // paper LP1 presets per dimension: 500/200/50/20 cubes, 1000/1500/2000/2500 sims
    const int preset_cubes[] = {0, 0, 500, 200, 50, 20};
    const int preset_sims[] = {0, 0, 1000, 1500, 2000, 2500};
    Stratification strat;
    strat.basis = LocalBasis::LP1;
    strat.n_time_steps = static_cast<int>(cfg.get_long("srmdp_steps", 5));
    strat.n_cubes = static_cast<int>(cfg.get_long("srmdp_cubes", d <= 5 ? preset_cubes[d] : 20));
    strat.n_sims_per_cube =
        static_cast<int>(cfg.get_long("srmdp_sims", d <= 5 ? preset_sims[d] : 2500));
    strat.n_batches = static_cast<int>(cfg.get_long("srmdp_batches", 10));

    const auto market = CorrelationSpec(sigma0, rho, d).to_market(r, s0);
    const ImParams im(spread, alpha, horizon);
    const auto payoff = Payoff::basket_call(strike, std::vector<double>(d, 1.0 / d));

    const auto mc = basket_reference_mc(market, payoff, maturity, n_paths, seed);
    const Driver driver(DriverKind::NL, market, im, maturity);
    const auto srmdp = srmdp_solve(driver, payoff, strat, seed + 1);

    out << "quantity,mc_value,mc_lo,mc_hi,srmdp_value,srmdp_lo,srmdp_hi\n";
    out << "price," << detail::fmt(mc.price.value) << ',' << detail::fmt(mc.price.ci_low) << ','
        << detail::fmt(mc.price.ci_high) << ',' << detail::fmt(srmdp.v0.value) << ','
        << detail::fmt(srmdp.v0.ci_low) << ',' << detail::fmt(srmdp.v0.ci_high) << '\n';
    for (int i = 0; i < d; ++i) {
        out << "delta_" << (i + 1) << ',' << detail::fmt(mc.deltas[i].value) << ','
            << detail::fmt(mc.deltas[i].ci_low) << ',' << detail::fmt(mc.deltas[i].ci_high) << ','
            << detail::fmt(srmdp.z0[i].value) << ',' << detail::fmt(srmdp.z0[i].ci_low) << ','
            << detail::fmt(srmdp.z0[i].ci_high) << '\n';
    }
}

inline void cmd_table(const std::string& name, const RunConfig& cfg, std::uint64_t seed,
                      std::ostream& out) {
    if (name == "call" || name == "put" || name == "butterfly")
        cmd_table_vanilla(name, cfg, seed, out);
    else if (name == "diff")
        cmd_table_diff(cfg, seed, out);
    else if (name == "linear")
        cmd_table_linear(cfg, seed, out);
    else if (name == "basket")
        cmd_table_basket(cfg, seed, out);
    else
        throw ConfigError("table: unknown name '" + name +
                          "' (expected call|put|butterfly|diff|linear|basket)");
}

// Implied-volatility smile from the IM-adjusted closed forms (or the FD
// solver); strikes that cannot be inverted are flagged, not fatal.
inline void cmd_smile(const RunConfig& cfg, std::uint64_t seed, std::ostream& out) {
    (void)seed;  // smile columns are deterministic closed forms
    std::set<std::string> keys = detail::kCommonKeys;
    keys.insert({"strikes", "source", "fd_m", "fd_n", "omega", "fd_scheme"});
    cfg.validate_keys(keys);
    const auto p = detail::common_params(cfg);
    std::vector<double> strikes;
    {
        const auto it = cfg.get_string("strikes", "");
        if (!it.empty()) {
            strikes = cfg.get_list("strikes", "");
        } else {
            for (double k = 17.0; k <= 23.0 + 1e-9; k += 0.25) strikes.push_back(k);
        }
    }
    const auto source = cfg.get_string("source", "closed");
    if (source != "closed" && source != "fd")
        throw ConfigError("config: source must be 'closed' or 'fd'");
    const int fd_m = static_cast<int>(cfg.get_long("fd_m", 4000));
    const int fd_n = static_cast<int>(cfg.get_long("fd_n", 1000));
    const double omega = cfg.get_double("omega", 0.5);
    const auto opts = detail::fd_options(cfg);

    out << "k,sigma_call,sigma_put,delta_call,delta_put,flag\n";
    for (double k : strikes) {
        BsQuote call_q, put_q;
        if (source == "closed") {
            call_q = bs_price_delta_with_im(p.s0, k, p.r, p.sigma, p.maturity, PayoffKind::Call,
                                            p.im);
            put_q = bs_price_delta_with_im(p.s0, k, p.r, p.sigma, p.maturity, PayoffKind::Put,
                                           p.im);
        } else {
            const auto grid =
                FdGrid(std::log(1e-6), std::log(4.0 * k), fd_m, fd_n, omega, p.maturity);
            const auto fc = solve_nl_pde(p.market, p.im, Payoff::call(k), grid, opts);
            const auto fp = solve_nl_pde(p.market, p.im, Payoff::put(k), grid, opts);
            call_q = {fc.price_at(p.s0), fc.delta_at(p.s0)};
            put_q = {fp.price_at(p.s0), fp.delta_at(p.s0)};
        }
        std::string flag = "ok";
        double iv_call = 0.0, iv_put = 0.0;
        try {
            iv_call = implied_vol(call_q.price, p.s0, k, p.r, p.maturity, PayoffKind::Call);
            iv_put = implied_vol(put_q.price, p.s0, k, p.r, p.maturity, PayoffKind::Put);
        } catch (const std::domain_error&) {
            flag = "inversion_failed";
        }
        out << detail::fmt(k, 2) << ',' << detail::fmt(iv_call) << ',' << detail::fmt(iv_put)
            << ',' << detail::fmt(call_q.delta) << ',' << detail::fmt(put_q.delta) << ',' << flag
            << '\n';
    }
}

// Theorem-3 gap study: sup-norm gaps per margin horizon plus fitted orders.
inline void cmd_convergence(const RunConfig& cfg, std::uint64_t seed, std::ostream& out) {
    (void)seed;
    std::set<std::string> keys = detail::kCommonKeys;
    keys.insert({"deltas", "k", "fd_m", "fd_n", "omega", "box_lo", "box_hi"});
    cfg.validate_keys(keys);
    const auto p = detail::common_params(cfg);
    const auto deltas = cfg.get_list("deltas", "0.005,0.01,0.02,0.04");
    const double k = cfg.get_double("k", 20.0);
    const int fd_m = static_cast<int>(cfg.get_long("fd_m", 2000));
    const int fd_n = static_cast<int>(cfg.get_long("fd_n", 1000));
    const double omega = cfg.get_double("omega", 0.5);
    const double box_lo = cfg.get_double("box_lo", 0.7);
    const double box_hi = cfg.get_double("box_hi", 1.3);

    const auto grid = FdGrid(std::log(1e-6), std::log(4.0 * k), fd_m, fd_n, omega, p.maturity);
    const auto study = convergence_study(Payoff::call(k), p.market, p.im, deltas, grid, box_lo,
                                         box_hi);
    out << "delta,gap_l_bs,gap_nl_l,slope_l_bs,slope_nl_l\n";
    for (const auto& row : study.rows) {
        out << detail::fmt(row.delta, 6) << ',' << detail::fmt(row.gap_l_bs, 9) << ','
            << detail::fmt(row.gap_nl_l, 9) << ',' << detail::fmt(study.slope_l_bs, 4) << ','
            << detail::fmt(study.slope_nl_l, 4) << '\n';
    }
}

// Empirical CVaR of a sample file, one real per line.
inline void cmd_cvar(const std::string& sample_path, double alpha, std::ostream& out) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ConfigError("cvar: alpha must lie in (0,1)");
    std::ifstream in(sample_path);
    if (!in) throw ConfigError("cvar: cannot open '" + sample_path + "'");
    std::vector<double> sample;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto a = line.find_first_not_of(" \t\r\n");
        if (a == std::string::npos) continue;
        try {
            std::size_t pos = 0;
            sample.push_back(std::stod(line, &pos));
            while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
            if (pos != line.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ConfigError("cvar: parse failure at line " + std::to_string(line_no));
        }
    }
    if (sample.empty()) throw ConfigError("cvar: sample file is empty");
    const auto res = empirical_cvar(sample, alpha);
    out << "cvar,minimizer_x\n"
        << detail::fmt(res.cvar, 10) << ',' << detail::fmt(res.minimizer_x, 10) << '\n';
}

} // namespace mbsde::cli
