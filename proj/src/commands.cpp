#include "svir/commands.hpp"

#include "svir/errors.hpp"
#include "svir/format.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

namespace svir {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
    return out;
}

std::string short_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

const char* yes_no(bool b)
{
    return b ? "true" : "false";
}

void write_snapshot(const FieldState& s, const Grid1D& grid, const fs::path& dir)
{
    auto out = open_output(dir / ("snapshot_" + short_number(s.t) + ".csv"));
    out << "x,S,V,I,R\n";
    for (std::size_t x = 0; x < s.nodes(); ++x) {
        out << format_number(grid.node(x)) << ',' << format_number(s.S[x]) << ',' << format_number(s.V[x])
            << ',' << format_number(s.I[x]) << ',' << format_number(s.R[x]) << '\n';
    }
}

const std::vector<std::string> non_sweepable = {"preset",      "incidence_f",      "incidence_h",
                                                "kernel",      "kernel_nodes",     "kernel_densities",
                                                "snapshot_times", "perturb_mode"};

} // namespace

AnalyzeReport analyze(const ScenarioConfig& cfg)
{
    const RunConfig& run = cfg.run;
    AnalyzeReport report;
    report.preset = cfg.preset;
    report.f_description = run.f.describe();
    report.h_description = run.h.describe();
    report.hypotheses = check_hypotheses(run.f, run.h, cfg.hypothesis_I_max, cfg.hypothesis_samples);
    report.dfe = disease_free(run.params);
    report.R0 = basic_reproduction_number(run.params, run.f, run.h);
    report.hprime = hprime_zero_identity(run.params, run.f, run.h);
    if (report.R0 > 1.0) {
        try {
            report.endemic = solve_endemic(run.params, run.f, run.h);
        } catch (const SearchFailure& e) {
            report.endemic_note = e.what();
        }
    } else {
        report.endemic_note = "R0 <= 1";
    }
    return report;
}

std::string format_report(const AnalyzeReport& r)
{
    std::ostringstream os;
    char r0_short[32];
    std::snprintf(r0_short, sizeof r0_short, "%.4f", r.R0);
    os << "preset = " << r.preset << '\n';
    os << "f = " << r.f_description << '\n';
    os << "h = " << r.h_description << '\n';
    os << "hypothesis_grid = " << r.hypotheses.n_samples << " samples on (0, "
       << short_number(r.hypotheses.I_max) << "]\n";
    os << "h1_holds = " << yes_no(r.hypotheses.h1_holds) << '\n';
    os << "h2_holds = " << yes_no(r.hypotheses.h2_holds) << '\n';
    if (const auto& v = r.hypotheses.first_violation) {
        os << "first_violation = " << v->condition << " fails at I = " << format_number(v->I)
           << " (value " << format_number(v->value) << ")\n";
    } else {
        os << "first_violation = none\n";
    }
    if (!r.hypotheses_hold()) {
        os << "warning = (H1)/(H2) fail; Lyapunov stability certificates do not apply\n";
    }
    os << "S0 = " << format_number(r.dfe.S) << '\n';
    os << "V0 = " << format_number(r.dfe.V) << '\n';
    os << "R0 = " << r0_short << '\n';
    os << "R0_full = " << format_number(r.R0) << '\n';
    if (r.endemic) {
        const EndemicSearch& e = *r.endemic;
        os << "endemic = present\n";
        os << "S_star = " << format_number(e.equilibrium.S) << '\n';
        os << "V_star = " << format_number(e.equilibrium.V) << '\n';
        os << "I_star = " << format_number(e.equilibrium.I) << '\n';
        os << "H_residual = " << format_number(e.residual) << '\n';
        os << "bisection_iterations = " << e.iterations << '\n';
        os << "sign_changes = " << e.sign_changes << " over " << e.scan_points << " log-spaced points\n";
        os << "endemic_unique = " << yes_no(e.unique()) << '\n';
    } else {
        os << "endemic = none\n";
        os << "endemic_reason = " << r.endemic_note << '\n';
    }
    os << "hprime0_fd = " << format_number(r.hprime.lhs) << '\n';
    os << "hprime0_formula = " << format_number(r.hprime.rhs) << '\n';
    os << "hprime0_residual = " << format_number(r.hprime.lhs - r.hprime.rhs) << '\n';
    return os.str();
}

AnalyzeReport cmd_analyze(const ScenarioConfig& cfg, const std::optional<fs::path>& out_dir, std::ostream& os)
{
    AnalyzeReport report = analyze(cfg);
    const std::string text = format_report(report);
    os << text;
    if (out_dir) {
        fs::create_directories(*out_dir);
        open_output(*out_dir / "report.txt") << text;
    }
    return report;
}

std::string_view to_string(Certificate c)
{
    switch (c) {
    case Certificate::pass:
        return "pass";
    case Certificate::fail:
        return "fail";
    case Certificate::not_applicable:
        return "n/a";
    }
    return "n/a";
}

Certificate evaluate_certificate(const Trajectory& traj, const RunConfig& cfg, const HypothesisReport& hyp)
{
    if (!hyp.h1_holds || !hyp.h2_holds || traj.records.empty()) {
        return Certificate::not_applicable;
    }
    const double t_min = 5.0 * cfg.dt;
    if (traj.R0 < 1.0) {
        const auto mono = check_nonincreasing(traj.records, &DiagnosticsRecord::L_dfe, t_min);
        if (!mono.defined) {
            return Certificate::not_applicable;
        }
        return mono.holds ? Certificate::pass : Certificate::fail;
    }
    if (traj.R0 > 1.0 && traj.endemic) {
        const auto mono = check_nonincreasing(traj.records, &DiagnosticsRecord::H_endemic, t_min);
        if (!mono.defined) {
            return Certificate::not_applicable;
        }
        const Equilibrium& e = *traj.endemic;
        const double scale = std::max({e.S, e.V, e.I});
        const auto& last = traj.records.back().diagnostics;
        const bool close = last.dist_endemic && *last.dist_endemic < endemic_relative_target * scale;
        return mono.holds && close ? Certificate::pass : Certificate::fail;
    }
    return Certificate::not_applicable;
}

std::string series_row(const TrajectoryRecord& rec)
{
    const DiagnosticsRecord& d = rec.diagnostics;
    std::string row = format_number(d.t);
    for (double v : rec.mean) {
        row += ',' + format_number(v);
    }
    for (double v : rec.sup) {
        row += ',' + format_number(v);
    }
    row += ',' + format_number(d.N);
    row += ',' + format_number(d.L_dfe);
    row += ',' + format_number(d.H_endemic);
    row += ',' + format_number(d.dist_dfe);
    row += ',' + format_number(d.dist_endemic);
    row += ',' + std::to_string(d.clamp_count);
    return row;
}

RunSummary cmd_simulate(const ScenarioConfig& cfg, const fs::path& out_dir)
{
    fs::create_directories(out_dir);
    auto series = open_output(out_dir / "series.csv");
    series << series_header << '\n';

    RunObservers observers;
    observers.on_record = [&](const TrajectoryRecord& rec) { series << series_row(rec) << '\n'; };
    observers.on_snapshot = [&](const FieldState& s) { write_snapshot(s, cfg.run.grid, out_dir); };

    auto write_manifest = [&](const std::string& result_block) {
        auto manifest = open_output(out_dir / "manifest");
        manifest << "# resolved configuration\n" << render_config(cfg) << "# result\n" << result_block;
    };

    Trajectory traj;
    try {
        traj = run(cfg.run, observers);
    } catch (const NumericalError& e) {
        series.flush();
        write_manifest(std::string("result.stop_reason = numerical_failure\nresult.error = ") + e.what() + "\n");
        throw;
    }
    series.flush();

    const HypothesisReport hyp =
        check_hypotheses(cfg.run.f, cfg.run.h, cfg.hypothesis_I_max, cfg.hypothesis_samples);
    RunSummary summary;
    summary.R0 = traj.R0;
    if (traj.endemic) {
        summary.I_star = traj.endemic->I;
    }
    summary.I_sup_final = traj.records.back().sup[2];
    summary.certificate = evaluate_certificate(traj, cfg.run, hyp);
    summary.stop = traj.stop;
    summary.t_final = traj.t_final;

    std::ostringstream result;
    result << "result.stop_reason = " << to_string(traj.stop) << '\n'
           << "result.t_final = " << format_number(traj.t_final) << '\n'
           << "result.steps = " << traj.steps << '\n'
           << "result.clamp_events = " << traj.clamp_total << '\n'
           << "result.R0 = " << format_number(traj.R0) << '\n'
           << "result.I_star = " << format_number(summary.I_star) << '\n'
           << "result.I_sup_final = " << format_number(summary.I_sup_final) << '\n'
           << "result.certificate = " << to_string(summary.certificate) << '\n';
    write_manifest(result.str());
    return summary;
}

std::vector<SweepRow> cmd_sweep(const ConfigMap& base, const std::string& key,
                                const std::vector<std::string>& values, const fs::path& out_dir,
                                std::size_t jobs)
{
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end() ||
        std::find(non_sweepable.begin(), non_sweepable.end(), key) != non_sweepable.end()) {
        throw ConfigError("'" + key + "' is not a sweepable scalar key");
    }
    if (values.empty()) {
        throw ConfigError("sweep needs at least one value");
    }
    fs::create_directories(out_dir);

    std::vector<SweepRow> rows(values.size());
    auto run_one = [&](std::size_t i) {
        SweepRow& row = rows[i];
        row.value = values[i];
        try {
            ConfigMap map = base;
            apply_override(map, key + "=" + values[i], "sweep value " + std::to_string(i));
            const ScenarioConfig cfg = resolve(map);
            const AnalyzeReport report = analyze(cfg);
            row.R0 = report.R0;
            if (report.endemic) {
                row.I_star = report.endemic->equilibrium.I;
            }
            char dir[32];
            std::snprintf(dir, sizeof dir, "run_%03zu", i);
            const RunSummary summary = cmd_simulate(cfg, out_dir / dir);
            row.I_sup_final = summary.I_sup_final;
            row.certificate = std::string(to_string(summary.certificate));
        } catch (const std::exception& e) {
            std::string msg = e.what();
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            row.status = "error: " + msg;
        }
    };

    const std::size_t workers = std::clamp<std::size_t>(jobs, 1, values.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < values.size(); i = next++) {
                run_one(i);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }

    auto summary = open_output(out_dir / "summary.csv");
    summary << sweep_header << '\n';
    for (const auto& row : rows) {
        summary << row.value << ',' << format_number(row.R0) << ',' << format_number(row.I_star) << ','
                << format_number(row.I_sup_final) << ',' << row.certificate << ',' << row.status << '\n';
    }
    return rows;
}

} // namespace svir
