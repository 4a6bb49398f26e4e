#pragma once

#include "svir/incidence.hpp"
#include "svir/kernel.hpp"
#include "svir/state.hpp"

#include <cstddef>
#include <deque>
#include <span>
#include <vector>

namespace svir {

/// Discrete delay rule: nodes tau_j in [0, k] with weights summing to one.
struct KernelQuadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Dirac kernels give a single node with weight one. Uniform and table kernels use
/// n_nodes composite-midpoint nodes with weights g(tau_j) dtau renormalized to sum to one.
/// Throws DegenerateKernel for a non-dirac kernel with k = 0.
KernelQuadrature build_quadrature(const DelayKernel& g, std::size_t n_nodes);

/// Time-ordered archive of FieldStates covering at least [t - k, t].
///
/// Sampling interpolates linearly in time. A `leading` state newer than the last
/// snapshot (an in-flight Runge-Kutta stage) may be supplied to extend coverage
/// up to its time.
class HistoryBuffer {
public:
    explicit HistoryBuffer(double horizon);

    /// Appends a snapshot; its time must exceed the newest stored time.
    void push(FieldState snapshot);

    /// Drops snapshots older than t_now - k - 2 dt while keeping one at or before t_now - k.
    void trim(double t_now, double dt);

    double horizon() const noexcept { return horizon_; }
    bool empty() const noexcept { return snapshots_.empty(); }
    std::size_t size() const noexcept { return snapshots_.size(); }
    double oldest_time() const;
    double newest_time() const;
    const FieldState& newest() const;
    const std::deque<FieldState>& snapshots() const noexcept { return snapshots_; }

    /// All four fields at t_query. Throws HistoryUnderflow outside coverage.
    FieldState sample(double t_query) const;

    /// One compartment at t_query written into `out`.
    void sample_field(Compartment c, double t_query, std::span<double> out,
                      const FieldState* leading = nullptr) const;

private:
    struct Bracket {
        const FieldState* a;
        const FieldState* b;
        double weight_b;
    };
    Bracket locate(double t_query, const FieldState* leading) const;

    double horizon_;
    std::deque<FieldState> snapshots_;
};

/// Linear-in-time history sampling over all four fields.
FieldState history_sample(const HistoryBuffer& hb, double t_query);

/// Nodewise sum_j w_j inc(I(t - tau_j, x)). The multiplying S or V factor is the caller's.
Field delay_incidence(const HistoryBuffer& hb, const KernelQuadrature& q, double t,
                      const IncidenceFunction& inc, const FieldState* leading = nullptr);

} // namespace svir
