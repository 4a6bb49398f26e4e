#include "svir/integrator.hpp"

#include "svir/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace svir {

namespace {

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void require_state_shape(const FieldState& s, const Grid1D& g, const char* what)
{
    for (Compartment c : all_compartments) {
        if (s.field(c).size() != g.nodes()) {
            throw SizeMismatch(std::string(what) + ": field " + to_string(c) + " has " +
                               std::to_string(s.field(c).size()) + " values, grid has " +
                               std::to_string(g.nodes()) + " nodes");
        }
    }
}

/// y + a * k, fieldwise, at time t.
FieldState axpy(const FieldState& y, double a, const FieldRates& k, double t)
{
    FieldState out;
    out.t = t;
    // a non-finite stage would otherwise surface later as a domain error in the incidence
    auto combine = [a, t](Compartment c, const Field& base, const Field& slope, Field& dst) {
        dst.resize(base.size());
        for (std::size_t x = 0; x < base.size(); ++x) {
            dst[x] = base[x] + a * slope[x];
            if (!std::isfinite(dst[x])) {
                throw BlowUp(t, to_string(c));
            }
        }
    };
    combine(Compartment::S, y.S, k.S, out.S);
    combine(Compartment::V, y.V, k.V, out.V);
    combine(Compartment::I, y.I, k.I, out.I);
    combine(Compartment::R, y.R, k.R, out.R);
    return out;
}

} // namespace

double RunConfig::max_stable_dt() const
{
    const double d_max = params.max_diffusion();
    if (!(d_max > 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    const double h = grid.spacing();
    return diffusion_safety * h * h / (2.0 * d_max);
}

void RunConfig::validate() const
{
    params.validate();
    const double k = kernel.horizon();
    if (std::fabs(k - params.k) > 1e-12 * std::max(1.0, params.k)) {
        throw ConfigError("kernel horizon " + num(k) + " does not match parameter k = " + num(params.k));
    }
    if (quadrature_nodes < 1) {
        throw ConfigError("n_nodes must be >= 1");
    }
    if (!std::isfinite(dt) || !(dt > 0.0)) {
        throw ConfigError("dt must be > 0, got " + num(dt));
    }
    const double bound = max_stable_dt();
    if (dt > bound) {
        throw ConfigError("dt = " + num(dt) + " violates dt <= 0.9*h^2/(2*d_max) = " + num(bound) +
                          " (h = " + num(grid.spacing()) + ", d_max = " + num(params.max_diffusion()) + ")");
    }
    if (!std::isfinite(t_end) || t_end < 0.0) {
        throw ConfigError("t_end must be finite and >= 0, got " + num(t_end));
    }
    if (!std::isfinite(steady_tol) || steady_tol < 0.0) {
        throw ConfigError("steady_tol must be >= 0, got " + num(steady_tol));
    }
    const double per_record = record_stride / dt;
    if (!(record_stride > 0.0) || std::fabs(per_record - std::round(per_record)) > 1e-6 * per_record ||
        std::round(per_record) < 1.0) {
        throw ConfigError("record_stride = " + num(record_stride) + " must be a positive multiple of dt = " +
                          num(dt));
    }
    for (double ts : snapshot_times) {
        if (!(ts >= 0.0) || ts > t_end) {
            throw ConfigError("snapshot time " + num(ts) + " lies outside [0, t_end]");
        }
    }
    require_state_shape(initial, grid, "initial state");
    for (Compartment c : all_compartments) {
        for (double v : initial.field(c)) {
            if (!std::isfinite(v) || v < 0.0) {
                throw ConfigError(std::string("initial ") + to_string(c) + " must be finite and >= 0");
            }
        }
    }
}

double FieldRates::sup_norm() const
{
    double m = 0.0;
    for (const Field* f : {&S, &V, &I, &R}) {
        for (double v : *f) {
            m = std::max(m, std::fabs(v));
        }
    }
    return m;
}

FieldRates rhs(const FieldState& state, const HistoryBuffer& hb, const KernelQuadrature& q,
               const RunConfig& cfg)
{
    const Grid1D& grid = cfg.grid;
    require_state_shape(state, grid, "rhs");
    const std::size_t n = grid.nodes();
    const Parameters& p = cfg.params;
    const FieldState* leading = state.t > hb.newest_time() ? &state : nullptr;

    Field force_f(n, 0.0);
    Field force_h(n, 0.0);
    Field lagged(n);
    for (std::size_t j = 0; j < q.nodes.size(); ++j) {
        hb.sample_field(Compartment::I, state.t - q.nodes[j], lagged, leading);
        const double w = q.weights[j];
        for (std::size_t x = 0; x < n; ++x) {
            const double I = std::max(lagged[x], 0.0);
            force_f[x] += w * cfg.f.value(I);
            force_h[x] += w * cfg.h.value(I);
        }
    }

    FieldRates out{laplacian_neumann(state.S, grid), laplacian_neumann(state.V, grid),
                   laplacian_neumann(state.I, grid), laplacian_neumann(state.R, grid)};
    for (std::size_t x = 0; x < n; ++x) {
        const double S = state.S[x];
        const double V = state.V[x];
        const double I = state.I[x];
        const double R = state.R[x];
        const double new_from_s = S * force_f[x];
        const double new_from_v = V * force_h[x];
        out.S[x] = p.dS * out.S[x] + p.Lambda - new_from_s - (p.mu + p.alpha) * S;
        out.V[x] = p.dV * out.V[x] + p.alpha * S - new_from_v - (p.gamma1 + p.mu) * V;
        out.I[x] = p.dI * out.I[x] + new_from_v + new_from_s - p.infected_exit_rate() * I;
        out.R[x] = p.dR * out.R[x] + p.gamma1 * V + p.gamma * I - p.mu * R;
    }
    return out;
}

FieldState step_rk4(const FieldState& state, HistoryBuffer& hb, const KernelQuadrature& q,
                    const RunConfig& cfg, StepInfo* info)
{
    return step_rk4(state, hb, q, cfg, state.t + cfg.dt, info);
}

FieldState step_rk4(const FieldState& state, HistoryBuffer& hb, const KernelQuadrature& q,
                    const RunConfig& cfg, double t_next, StepInfo* info)
{
    const double dt = t_next - state.t;
    const double t_half = state.t + 0.5 * dt;

    const FieldRates k1 = rhs(state, hb, q, cfg);
    const FieldRates k2 = rhs(axpy(state, 0.5 * dt, k1, t_half), hb, q, cfg);
    const FieldRates k3 = rhs(axpy(state, 0.5 * dt, k2, t_half), hb, q, cfg);
    const FieldRates k4 = rhs(axpy(state, dt, k3, t_next), hb, q, cfg);

    FieldState next;
    next.t = t_next;
    std::size_t clamped = 0;
    auto advance = [&](Compartment c, const Field& a, const Field& b, const Field& cc, const Field& d) {
        const Field& y = state.field(c);
        Field& dst = next.field(c);
        dst.resize(y.size());
        for (std::size_t x = 0; x < y.size(); ++x) {
            double v = y[x] + dt / 6.0 * (a[x] + 2.0 * b[x] + 2.0 * cc[x] + d[x]);
            if (!std::isfinite(v)) {
                throw BlowUp(t_next, to_string(c));
            }
            if (v < 0.0) {
                v = 0.0;
                ++clamped;
            }
            dst[x] = v;
        }
    };
    advance(Compartment::S, k1.S, k2.S, k3.S, k4.S);
    advance(Compartment::V, k1.V, k2.V, k3.V, k4.V);
    advance(Compartment::I, k1.I, k2.I, k3.I, k4.I);
    advance(Compartment::R, k1.R, k2.R, k3.R, k4.R);

    if (info) {
        info->clamped = clamped;
        info->rhs_norm = k1.sup_norm();
    }
    hb.push(next);
    hb.trim(t_next, dt);
    return next;
}

HistoryBuffer initial_history(const RunConfig& cfg)
{
    const double k = cfg.kernel.horizon();
    HistoryBuffer hb(k);
    FieldState start = cfg.initial;
    start.t = 0.0;
    if (k > 0.0) {
        const auto n = static_cast<std::size_t>(std::ceil(k / cfg.dt - 1e-9));
        for (std::size_t m = 0; m < n; ++m) {
            const double theta = -k + static_cast<double>(m) * k / static_cast<double>(n);
            FieldState snap = cfg.history ? cfg.history(theta) : start;
            snap.t = theta;
            require_state_shape(snap, cfg.grid, "initial history");
            hb.push(std::move(snap));
        }
    }
    hb.push(std::move(start));
    return hb;
}

Simulator::Simulator(RunConfig cfg)
    : cfg_(std::move(cfg)), quadrature_(), history_(0.0)
{
    cfg_.validate();
    quadrature_ = build_quadrature(cfg_.kernel, cfg_.quadrature_nodes);
    history_ = initial_history(cfg_);
    state_ = history_.newest();
}

void Simulator::step()
{
    StepInfo info;
    const double t_next = static_cast<double>(steps_ + 1) * cfg_.dt;
    state_ = step_rk4(state_, history_, quadrature_, cfg_, t_next, &info);
    ++steps_;
    clamps_ += info.clamped;
    last_rhs_norm_ = info.rhs_norm;
}

} // namespace svir
