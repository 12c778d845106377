// Command-line front end: storage of a weak 2D probe in a slow-light medium
// and its retrieval along the perpendicular axis.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "eitstore/commands.hpp"

namespace {

struct CliOverrides {
    std::string config_path;
    std::string preset;
    std::string out_dir;
    std::string scheme;
    std::string snapshots;
    int nx = 0, ny = 0, threads = 0;
    double cfl = 0.0;
    bool strict = false;
    bool binary = false;
    bool verify = false;
    double tolerance = 0.05;
};

eitstore::ParsedConfig resolve_config(const CliOverrides& cli) {
    using namespace eitstore;
    std::string text;
    if (!cli.config_path.empty()) {
        std::ifstream in(cli.config_path);
        if (!in) throw ConfigError("cannot open config file " + cli.config_path);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    ParsedConfig cfg = parse_config(text, cli.strict);
    for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";

    std::string overrides;
    if (!cli.preset.empty()) overrides += "scenario.preset = " + cli.preset + "\n";
    if (cli.nx > 0) overrides += "solver.nx = " + std::to_string(cli.nx) + "\n";
    if (cli.ny > 0) overrides += "solver.ny = " + std::to_string(cli.ny) + "\n";
    if (cli.threads > 0) overrides += "solver.threads = " + std::to_string(cli.threads) + "\n";
    if (cli.cfl > 0.0) overrides += "solver.cfl = " + eitstore::detail::fmt(cli.cfl) + "\n";
    if (!cli.scheme.empty()) overrides += "solver.scheme = " + cli.scheme + "\n";
    if (!cli.snapshots.empty()) overrides += "solver.snapshots = " + cli.snapshots + "\n";
    if (!cli.out_dir.empty()) overrides += "output.dir = " + cli.out_dir + "\n";
    if (cli.binary) overrides += "output.binary = true\n";
    if (overrides.empty()) return cfg;

    // re-parse the file with the overrides appended so later keys win
    ParsedConfig merged = parse_config(text + overrides, cli.strict);
    merged.warnings.clear();
    return merged;
}

} // namespace

int main(int argc, char** argv) {
    using namespace eitstore;
    CLI::App app{"2D slow-light pulse storage with perpendicular retrieval"};
    app.require_subcommand(1);

    CliOverrides cli;
    auto add_common = [&cli](CLI::App* cmd) {
        cmd->add_option("--config", cli.config_path, "configuration file (key = value lines)");
        cmd->add_option("--preset", cli.preset, "scenario preset (fig2)");
        cmd->add_option("--out", cli.out_dir, "output directory");
        cmd->add_option("--nx", cli.nx, "grid nodes along x");
        cmd->add_option("--ny", cli.ny, "grid nodes along y");
        cmd->add_option("--cfl", cli.cfl, "Courant number in (0, 1]");
        cmd->add_option("--scheme", cli.scheme, "advection scheme: upwind | lw");
        cmd->add_option("--threads", cli.threads, "worker threads");
        cmd->add_option("--snapshots", cli.snapshots, "comma-separated snapshot times");
        cmd->add_flag("--strict", cli.strict, "reject unknown config keys");
        cmd->add_flag("--binary", cli.binary, "emit binary grids");
    };

    auto* sim = app.add_subcommand("simulate", "run the finite-difference scenario");
    add_common(sim);
    sim->add_flag("--verify", cli.verify, "also write comparison metrics");

    auto* ana = app.add_subcommand("analytic", "emit the closed-form solution grids");
    add_common(ana);

    auto* ver = app.add_subcommand("verify", "numeric run checked against the closed forms");
    add_common(ver);
    ver->add_option("--tolerance", cli.tolerance, "L2 tolerance for pass/fail");

    auto* ora = app.add_subcommand("oracle", "single-atom adiabatic-reduction check");
    add_common(ora);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        const ParsedConfig cfg = resolve_config(cli);
        if (sim->parsed()) return cmd_simulate(cfg, cli.verify, std::cout);
        if (ana->parsed()) return cmd_analytic(cfg, std::cout);
        if (ver->parsed()) return cmd_verify(cfg, cli.tolerance, std::cout);
        if (ora->parsed()) return cmd_oracle(cfg, std::cout);
        return exit_usage;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return exit_usage;
    } catch (const RegimeError& e) {
        std::cerr << "regime error: " << e.what() << "\n";
        std::cerr << "set scenario.acknowledge_diagnostics = true to run anyway\n";
        return exit_regime;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numeric;
    }
}
