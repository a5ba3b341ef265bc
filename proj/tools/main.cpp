#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mbsde/cli.hpp"

namespace {

// 0 success, 2 configuration error, 3 numerical failure
constexpr int kConfigExit = 2;
constexpr int kNumericalExit = 3;

mbsde::cli::RunConfig load_config(const std::string& path) {
    if (path.empty()) return {};
    return mbsde::cli::RunConfig::from_file(path);
}

int run_to_output(const std::string& out_path, const std::function<void(std::ostream&)>& body) {
    if (out_path.empty() || out_path == "-") {
        body(std::cout);
        return 0;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot open output path '" << out_path << "'\n";
        return kConfigExit;
    }
    body(out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"margin-bsde: derivative pricing under CVaR initial-margin funding costs"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    std::uint64_t seed = 12345;
    app.add_option("--config", config_path, "flat key=value config file");
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--out", out_path, "output CSV path (default stdout)");

    std::string table_name;
    auto* table = app.add_subcommand("table", "reproduce a price/delta table as CSV");
    table->add_option("--name", table_name, "call|put|butterfly|diff|linear|basket")->required();

    auto* smile = app.add_subcommand("smile", "implied-volatility smile as CSV");
    auto* convergence = app.add_subcommand("convergence", "margin-horizon gap orders as CSV");

    std::string sample_path;
    double alpha = 0.99;
    auto* cvar = app.add_subcommand("cvar", "empirical CVaR of a sample file");
    cvar->add_option("--sample", sample_path, "file with one real per line")->required();
    cvar->add_option("--alpha", alpha, "confidence level in (0,1)");

    // accept the global options after the subcommand as well
    for (auto* sub : {table, smile, convergence, cvar}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigExit;
    }

    try {
        const auto cfg = load_config(config_path);
        if (table->parsed())
            return run_to_output(out_path, [&](std::ostream& os) {
                mbsde::cli::cmd_table(table_name, cfg, seed, os);
            });
        if (smile->parsed())
            return run_to_output(out_path, [&](std::ostream& os) {
                mbsde::cli::cmd_smile(cfg, seed, os);
            });
        if (convergence->parsed())
            return run_to_output(out_path, [&](std::ostream& os) {
                mbsde::cli::cmd_convergence(cfg, seed, os);
            });
        if (cvar->parsed())
            return run_to_output(out_path, [&](std::ostream& os) {
                mbsde::cli::cmd_cvar(sample_path, alpha, os);
            });
    } catch (const mbsde::cli::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigExit;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigExit;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumericalExit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumericalExit;
    }
    return 0;
}
