#pragma once

#include "svir/delay.hpp"
#include "svir/incidence.hpp"
#include "svir/kernel.hpp"
#include "svir/parameters.hpp"
#include "svir/spatial.hpp"
#include "svir/state.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace svir {

inline constexpr double diffusion_safety = 0.9;
inline constexpr double default_dt = 2.5e-4;
inline constexpr double default_steady_tol = 1e-8;
inline constexpr std::size_t default_quadrature_nodes = 32;

/// Initial history Phi(theta) for theta in [-k, 0].
using HistoryFunction = std::function<FieldState(double theta)>;

/// Everything a single simulation needs.
struct RunConfig {
    Parameters params;
    IncidenceFunction f = IncidenceFunction::bilinear(0.0);
    IncidenceFunction h = IncidenceFunction::bilinear(0.0);
    DelayKernel kernel = DelayKernel::dirac(0.0);
    std::size_t quadrature_nodes = default_quadrature_nodes;
    Grid1D grid{100};
    double dt = default_dt;
    double t_end = 0.0;
    double steady_tol = default_steady_tol;
    double record_stride = 1.0;
    std::vector<double> snapshot_times;
    /// State at t = 0.
    FieldState initial;
    /// Phi on [-k, 0]; when empty the history is the initial state held constant.
    HistoryFunction history;

    /// dt bound safety * h^2 / (2 max d); +inf without diffusion.
    double max_stable_dt() const;
    /// Throws ConfigError on any violated constraint, naming the bound.
    void validate() const;
};

/// Time derivatives of the four fields.
struct FieldRates {
    Field S;
    Field V;
    Field I;
    Field R;

    /// Max-norm over all four fields.
    double sup_norm() const;
};

/// Method-of-lines right-hand side at `state`. When state.t is newer than the
/// history, `state` itself closes the interpolation window (stage evaluation).
FieldRates rhs(const FieldState& state, const HistoryBuffer& hb, const KernelQuadrature& q,
               const RunConfig& cfg);

struct StepInfo {
    std::size_t clamped = 0; ///< negative node values reset to zero
    double rhs_norm = 0.0;   ///< sup-norm of the first stage, i.e. of rhs(state)
};

/// Classical RK4 step from `state` to t_next (state.t + dt by default). The new
/// state is appended to `hb` and old snapshots are trimmed. Throws BlowUp on
/// non-finite output.
FieldState step_rk4(const FieldState& state, HistoryBuffer& hb, const KernelQuadrature& q,
                    const RunConfig& cfg, StepInfo* info = nullptr);
FieldState step_rk4(const FieldState& state, HistoryBuffer& hb, const KernelQuadrature& q,
                    const RunConfig& cfg, double t_next, StepInfo* info = nullptr);

/// History buffer seeded from cfg.history (or the constant initial state) on [-k, 0]
/// with spacing at most dt.
HistoryBuffer initial_history(const RunConfig& cfg);

/// Single-owner stepping loop over one RunConfig.
class Simulator {
public:
    explicit Simulator(RunConfig cfg);

    void step();

    const RunConfig& config() const noexcept { return cfg_; }
    const FieldState& state() const noexcept { return state_; }
    const HistoryBuffer& history() const noexcept { return history_; }
    const KernelQuadrature& quadrature() const noexcept { return quadrature_; }
    std::size_t steps_taken() const noexcept { return steps_; }
    std::size_t clamp_count() const noexcept { return clamps_; }
    /// rhs sup-norm at the state before the most recent step.
    double last_rhs_norm() const noexcept { return last_rhs_norm_; }

private:
    RunConfig cfg_;
    KernelQuadrature quadrature_;
    HistoryBuffer history_;
    FieldState state_;
    std::size_t steps_ = 0;
    std::size_t clamps_ = 0;
    double last_rhs_norm_ = 0.0;
};

} // namespace svir
