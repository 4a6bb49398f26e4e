#pragma once

#include "svir/diagnostics.hpp"
#include "svir/equilibria.hpp"
#include "svir/integrator.hpp"
#include "svir/state.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace svir {

enum class StopReason { t_end, steady_state };

std::string_view to_string(StopReason reason);

/// One row of the recorded time series.
struct TrajectoryRecord {
    DiagnosticsRecord diagnostics;
    std::array<double, 4> mean{}; ///< spatial means of S, V, I, R
    std::array<double, 4> sup{};  ///< spatial maxima of S, V, I, R
    double spread = 0.0;          ///< max over fields of (max - min) across nodes
    double t() const noexcept { return diagnostics.t; }
};

struct Trajectory {
    std::vector<TrajectoryRecord> records;
    std::vector<FieldState> snapshots;
    StopReason stop = StopReason::t_end;
    double t_final = 0.0;
    std::size_t steps = 0;
    std::size_t clamp_total = 0;
    double R0 = 0.0;
    Equilibrium dfe;
    std::optional<Equilibrium> endemic;
    FieldState final_state;
};

struct RunObservers {
    std::function<void(const TrajectoryRecord&)> on_record;
    std::function<void(const FieldState&)> on_snapshot;
};

/// Diagnostics of the simulator's current state.
TrajectoryRecord make_record(const Simulator& sim, const Equilibrium& dfe,
                             const std::optional<Equilibrium>& endemic, double t_label);

/// Integrates cfg from t = 0 to t_end, or until the rhs sup-norm drops below
/// steady_tol. Records are taken every record_stride (labelled m * stride) and
/// once more at the stopping time if it is off the schedule.
Trajectory run(const RunConfig& cfg, const RunObservers& observers = {});

struct MonotonicityCheck {
    bool defined = false;       ///< the functional was available at every checked record
    bool holds = false;
    double worst_increase = 0.0; ///< largest rise between consecutive records
    double at_t = 0.0;           ///< time of the record where it occurred
    double slack = 0.0;
};

inline constexpr double monotonicity_relative_slack = 1e-8;

/// Checks that a Lyapunov column never rises by more than
/// relative_slack * (value at the first record) between consecutive records
/// whose earlier member has t >= t_min.
MonotonicityCheck check_nonincreasing(const std::vector<TrajectoryRecord>& records,
                                      std::optional<double> DiagnosticsRecord::*column, double t_min,
                                      double relative_slack = monotonicity_relative_slack);

} // namespace svir
