#pragma once

#include "svir/config.hpp"
#include "svir/equilibria.hpp"
#include "svir/hypotheses.hpp"
#include "svir/simulation.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace svir {

/// Threshold quantities of one scenario.
struct AnalyzeReport {
    std::string preset;
    std::string f_description;
    std::string h_description;
    HypothesisReport hypotheses;
    Equilibrium dfe;
    double R0 = 0.0;
    std::optional<EndemicSearch> endemic;
    std::string endemic_note; ///< why `endemic` is empty
    HPrimeIdentity hprime;

    bool hypotheses_hold() const noexcept { return hypotheses.h1_holds && hypotheses.h2_holds; }
};

AnalyzeReport analyze(const ScenarioConfig& cfg);

/// `key = value` lines; R0 is printed to four decimals and again in full.
std::string format_report(const AnalyzeReport& report);

/// Prints the report and writes `report.txt` into out_dir when given.
AnalyzeReport cmd_analyze(const ScenarioConfig& cfg, const std::optional<std::filesystem::path>& out_dir,
                          std::ostream& os);

enum class Certificate { pass, fail, not_applicable };

std::string_view to_string(Certificate c);

/// Stability certificate of a finished run:
///   R0 < 1: L_dfe nonincreasing after t >= 5 dt (slack 1e-8 L_dfe(0));
///   R0 > 1: H_endemic nonincreasing with the same slack and the final
///           dist_endemic below 5% of max(S*, V*, I*).
/// Not applicable when (H1)/(H2) fail, R0 == 1, or a functional is undefined.
Certificate evaluate_certificate(const Trajectory& traj, const RunConfig& cfg, const HypothesisReport& hyp);

inline constexpr double endemic_relative_target = 0.05;

struct RunSummary {
    double R0 = 0.0;
    std::optional<double> I_star;
    double I_sup_final = 0.0;
    Certificate certificate = Certificate::not_applicable;
    StopReason stop = StopReason::t_end;
    double t_final = 0.0;
};

/// Writes series.csv, snapshot_<t>.csv files and manifest into out_dir.
/// On a numerical failure the manifest records it and the error is rethrown.
RunSummary cmd_simulate(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);

inline const char* series_header =
    "t,S_mean,V_mean,I_mean,R_mean,S_sup,V_sup,I_sup,R_sup,N,L_dfe,H_endemic,dist_dfe,dist_endemic,clamps";

std::string series_row(const TrajectoryRecord& rec);

struct SweepRow {
    std::string value;
    std::optional<double> R0;
    std::optional<double> I_star;
    std::optional<double> I_sup_final;
    std::string certificate;
    std::string status = "ok";
};

inline const char* sweep_header = "value,R0,I_star,I_sup_final,certificate,status";

/// Runs `base` once per value of `key` (each in out_dir/run_<index>) on up to
/// `jobs` threads, then writes out_dir/summary.csv in input order. Failing rows
/// carry their error in `status`; the sweep continues.
std::vector<SweepRow> cmd_sweep(const ConfigMap& base, const std::string& key,
                                const std::vector<std::string>& values, const std::filesystem::path& out_dir,
                                std::size_t jobs);

} // namespace svir
