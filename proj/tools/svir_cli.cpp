// Command-line front end: analyze, simulate and sweep a diffusive SVIR scenario.

#include "svir/commands.hpp"
#include "svir/config.hpp"
#include "svir/errors.hpp"
#include "svir/format.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace {

constexpr int exit_config_error = 2;
constexpr int exit_numerical_error = 3;

struct CommonOptions {
    std::string config;
    std::string preset;
    std::string out;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& opts)
{
    cmd->add_option("--config", opts.config, "key = value configuration file");
    cmd->add_option("--preset", opts.preset, "table1_low or table1_high");
    cmd->add_option("--out", opts.out, "output directory");
    cmd->add_option("--set", opts.overrides, "override, key=value (repeatable)");
}

svir::ConfigMap build_map(const CommonOptions& opts)
{
    svir::ConfigMap map;
    if (!opts.preset.empty()) {
        map = svir::preset_values(opts.preset);
    }
    if (!opts.config.empty()) {
        const svir::ConfigMap file = svir::load_config_file(opts.config);
        if (const auto* p = file.find("preset"); p && !opts.preset.empty() && p->value != opts.preset) {
            throw svir::ConfigError("--preset " + opts.preset + " conflicts with " + p->origin);
        }
        for (const auto& [k, e] : file.entries()) {
            map.set(k, e.value, e.origin);
        }
    }
    for (const auto& o : opts.overrides) {
        svir::apply_override(map, o);
    }
    return map;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Diffusive SVIR model with distributed delay: threshold analysis and simulation"};
    app.require_subcommand(1);

    CommonOptions analyze_opts;
    auto* analyze = app.add_subcommand("analyze", "hypotheses, equilibria and R0 report");
    add_common(analyze, analyze_opts);

    CommonOptions simulate_opts;
    auto* simulate = app.add_subcommand("simulate", "integrate the PDE system and write CSV outputs");
    add_common(simulate, simulate_opts);

    CommonOptions sweep_opts;
    std::string sweep_key;
    std::vector<std::string> sweep_values;
    std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
    auto* sweep = app.add_subcommand("sweep", "repeat simulate over values of one scalar key");
    add_common(sweep, sweep_opts);
    sweep->add_option("--key", sweep_key, "scalar key to vary")->required();
    sweep->add_option("--values", sweep_values, "values (comma separated or repeated)")
        ->required()
        ->delimiter(',');
    sweep->add_option("--jobs", jobs, "parallel runs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            const auto cfg = svir::resolve(build_map(analyze_opts));
            std::optional<std::filesystem::path> out;
            if (!analyze_opts.out.empty()) {
                out = analyze_opts.out;
            }
            svir::cmd_analyze(cfg, out, std::cout);
        } else if (simulate->parsed()) {
            const auto cfg = svir::resolve(build_map(simulate_opts));
            const std::string out = simulate_opts.out.empty() ? "out" : simulate_opts.out;
            const auto summary = svir::cmd_simulate(cfg, out);
            std::cout << "stop_reason = " << svir::to_string(summary.stop) << '\n'
                      << "t_final = " << svir::format_number(summary.t_final) << '\n'
                      << "R0 = " << svir::format_number(summary.R0) << '\n'
                      << "I_star = " << svir::format_number(summary.I_star) << '\n'
                      << "I_sup_final = " << svir::format_number(summary.I_sup_final) << '\n'
                      << "certificate = " << svir::to_string(summary.certificate) << '\n'
                      << "outputs = " << out << '\n';
        } else if (sweep->parsed()) {
            const auto base = build_map(sweep_opts);
            const std::string out = sweep_opts.out.empty() ? "sweep_out" : sweep_opts.out;
            const auto rows = svir::cmd_sweep(base, sweep_key, sweep_values, out, jobs);
            std::cout << svir::sweep_header << '\n';
            for (const auto& r : rows) {
                std::cout << r.value << ',' << svir::format_number(r.R0) << ',' << svir::format_number(r.I_star)
                          << ',' << svir::format_number(r.I_sup_final) << ',' << r.certificate << ',' << r.status
                          << '\n';
            }
        }
    } catch (const svir::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const svir::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
