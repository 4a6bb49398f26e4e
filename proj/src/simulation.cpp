#include "svir/simulation.hpp"

#include "svir/errors.hpp"

#include <algorithm>
#include <cmath>

namespace svir {

std::string_view to_string(StopReason reason)
{
    switch (reason) {
    case StopReason::t_end:
        return "t_end";
    case StopReason::steady_state:
        return "steady_state";
    }
    return "unknown";
}

TrajectoryRecord make_record(const Simulator& sim, const Equilibrium& dfe,
                             const std::optional<Equilibrium>& endemic, double t_label)
{
    const RunConfig& cfg = sim.config();
    const FieldState& s = sim.state();
    TrajectoryRecord rec;
    DiagnosticsRecord& d = rec.diagnostics;
    d.t = t_label;
    d.N = total_mass(s, cfg.grid);
    d.dist_dfe = sup_distance(s, dfe);
    d.clamp_count = sim.clamp_count();
    if (dfe.S > 0.0 && dfe.V > 0.0) {
        d.L_dfe = lyapunov_dfe(s, sim.history(), sim.quadrature(), cfg.f, cfg.h, dfe, cfg.grid);
    }
    if (endemic) {
        d.dist_endemic = sup_distance(s, *endemic);
        const bool positive = std::all_of(s.I.begin(), s.I.end(), [](double v) { return v > 0.0; });
        if (positive) {
            d.H_endemic = lyapunov_endemic(s, sim.history(), sim.quadrature(), cfg.f, cfg.h, *endemic, cfg.grid);
        }
    }
    for (std::size_t c = 0; c < all_compartments.size(); ++c) {
        const Field& f = s.field(all_compartments[c]);
        rec.mean[c] = integrate_field(f, cfg.grid);
        const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
        rec.sup[c] = *hi;
        rec.spread = std::max(rec.spread, *hi - *lo);
    }
    return rec;
}

Trajectory run(const RunConfig& cfg, const RunObservers& observers)
{
    Simulator sim(cfg);
    Trajectory traj;
    traj.dfe = disease_free(cfg.params);
    traj.R0 = basic_reproduction_number(cfg.params, cfg.f, cfg.h);
    if (traj.R0 > 1.0) {
        try {
            traj.endemic = endemic_equilibrium(cfg.params, cfg.f, cfg.h);
        } catch (const NumericalError&) {
            traj.endemic.reset();
        }
    }

    const auto steps_per_record = static_cast<std::size_t>(std::llround(cfg.record_stride / cfg.dt));
    const auto total_steps = static_cast<std::size_t>(std::llround(cfg.t_end / cfg.dt));
    std::vector<std::size_t> snapshot_steps;
    for (double ts : cfg.snapshot_times) {
        snapshot_steps.push_back(static_cast<std::size_t>(std::llround(ts / cfg.dt)));
    }

    auto emit_record = [&](double label) {
        traj.records.push_back(make_record(sim, traj.dfe, traj.endemic, label));
        if (observers.on_record) {
            observers.on_record(traj.records.back());
        }
    };
    auto emit_snapshots = [&] {
        for (std::size_t i = 0; i < snapshot_steps.size(); ++i) {
            if (snapshot_steps[i] == sim.steps_taken()) {
                FieldState snap = sim.state();
                snap.t = cfg.snapshot_times[i];
                if (observers.on_snapshot) {
                    observers.on_snapshot(snap);
                }
                traj.snapshots.push_back(std::move(snap));
            }
        }
    };

    emit_record(0.0);
    emit_snapshots();
    traj.stop = StopReason::t_end;
    while (sim.steps_taken() < total_steps) {
        sim.step();
        const std::size_t n = sim.steps_taken();
        const bool steady = sim.last_rhs_norm() < cfg.steady_tol;
        if (n % steps_per_record == 0) {
            emit_record(static_cast<double>(n / steps_per_record) * cfg.record_stride);
        } else if (steady || n == total_steps) {
            emit_record(sim.state().t);
        }
        emit_snapshots();
        if (steady) {
            traj.stop = StopReason::steady_state;
            break;
        }
    }
    traj.steps = sim.steps_taken();
    traj.t_final = sim.state().t;
    traj.clamp_total = sim.clamp_count();
    traj.final_state = sim.state();
    return traj;
}

MonotonicityCheck check_nonincreasing(const std::vector<TrajectoryRecord>& records,
                                      std::optional<double> DiagnosticsRecord::*column, double t_min,
                                      double relative_slack)
{
    MonotonicityCheck out;
    if (records.empty() || !(records.front().diagnostics.*column)) {
        return out;
    }
    out.slack = relative_slack * std::fabs(*(records.front().diagnostics.*column));
    out.defined = true;
    out.holds = true;
    for (std::size_t i = 0; i + 1 < records.size(); ++i) {
        const auto& a = records[i].diagnostics;
        const auto& b = records[i + 1].diagnostics;
        if (a.t < t_min) {
            continue;
        }
        if (!(a.*column) || !(b.*column)) {
            out.defined = false;
            out.holds = false;
            return out;
        }
        const double rise = *(b.*column) - *(a.*column);
        if (rise > out.worst_increase) {
            out.worst_increase = rise;
            out.at_t = b.t;
        }
        if (rise > out.slack) {
            out.holds = false;
        }
    }
    return out;
}

} // namespace svir
