#include "svir/diagnostics.hpp"

#include "svir/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace svir {

namespace {

/// Piecewise-linear time samples of a nodal integrand.
struct TimeSeries {
    std::vector<double> t;
    std::vector<Field> values;
};

/// Snapshots of `hb` within reach of the kernel horizon, closed by `state`.
template <class Integrand>
TimeSeries collect(const FieldState& state, const HistoryBuffer& hb, double horizon, Integrand&& integrand)
{
    TimeSeries ts;
    const double t_lo = state.t - horizon;
    const auto& snaps = hb.snapshots();
    auto first = std::upper_bound(snaps.begin(), snaps.end(), t_lo,
                                  [](double t, const FieldState& s) { return t < s.t; });
    if (first != snaps.begin()) {
        --first;
    }
    for (auto it = first; it != snaps.end() && it->t < state.t; ++it) {
        ts.t.push_back(it->t);
        ts.values.push_back(integrand(*it));
    }
    ts.t.push_back(state.t);
    ts.values.push_back(integrand(state));
    return ts;
}

/// sum_j w_j int_{t - tau_j}^{t} G(u) du, nodewise, with G linear between samples.
Field delayed_integral(const TimeSeries& ts, const KernelQuadrature& q)
{
    const std::size_t n = ts.values.back().size();
    const std::size_t m = ts.t.size();
    // tail[i] = int_{t_i}^{t_end} G
    std::vector<Field> tail(m, Field(n, 0.0));
    for (std::size_t i = m - 1; i-- > 0;) {
        const double dt = ts.t[i + 1] - ts.t[i];
        for (std::size_t x = 0; x < n; ++x) {
            tail[i][x] = tail[i + 1][x] + 0.5 * dt * (ts.values[i][x] + ts.values[i + 1][x]);
        }
    }

    Field out(n, 0.0);
    const double t_end = ts.t.back();
    for (std::size_t j = 0; j < q.nodes.size(); ++j) {
        const double lower = t_end - q.nodes[j];
        if (q.nodes[j] <= 0.0) {
            continue;
        }
        const double slack = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(lower));
        if (lower < ts.t.front() - slack) {
            throw HistoryUnderflow("functional needs history back to t = " + std::to_string(lower) +
                                   ", oldest stored is " + std::to_string(ts.t.front()));
        }
        auto it = std::upper_bound(ts.t.begin(), ts.t.end(), lower);
        std::size_t b = static_cast<std::size_t>(it - ts.t.begin());
        if (b == 0) {
            b = 1;
        }
        if (b >= m) {
            continue; // lower == t_end
        }
        const std::size_t a = b - 1;
        const double span = ts.t[b] - ts.t[a];
        const double wb = std::clamp((lower - ts.t[a]) / span, 0.0, 1.0);
        const double width = ts.t[b] - std::max(lower, ts.t[a]);
        for (std::size_t x = 0; x < n; ++x) {
            const double g_lower = (1.0 - wb) * ts.values[a][x] + wb * ts.values[b][x];
            out[x] += q.weights[j] * (tail[b][x] + 0.5 * width * (g_lower + ts.values[b][x]));
        }
    }
    return out;
}

double floored(double v)
{
    return std::max(v, log_floor);
}

} // namespace

double phi(double x)
{
    if (!(x > 0.0)) {
        throw DomainError("phi(x) needs x > 0, got " + std::to_string(x));
    }
    return (x - 1.0) - std::log1p(x - 1.0);
}

double total_mass(const FieldState& state, const Grid1D& grid)
{
    Field sum(state.nodes());
    for (std::size_t x = 0; x < sum.size(); ++x) {
        sum[x] = state.S[x] + state.V[x] + state.I[x] + state.R[x];
    }
    return integrate_field(sum, grid);
}

double lyapunov_dfe(const FieldState& state, const HistoryBuffer& hb, const KernelQuadrature& q,
                    const IncidenceFunction& f, const IncidenceFunction& h,
                    const Equilibrium& dfe, const Grid1D& grid)
{
    if (!(dfe.S > 0.0) || !(dfe.V > 0.0)) {
        throw DomainError("disease-free functional needs S0 > 0 and V0 > 0");
    }
    const std::size_t n = state.nodes();
    Field density(n);
    for (std::size_t x = 0; x < n; ++x) {
        density[x] = state.I[x] + dfe.S * phi(floored(state.S[x]) / dfe.S) +
                     dfe.V * phi(floored(state.V[x]) / dfe.V);
    }

    const double horizon = *std::max_element(q.nodes.begin(), q.nodes.end());
    if (horizon > 0.0) {
        const TimeSeries ts = collect(state, hb, horizon, [&](const FieldState& s) {
            Field g(s.nodes());
            for (std::size_t x = 0; x < g.size(); ++x) {
                const double I = std::max(s.I[x], 0.0);
                g[x] = f.value(I) * s.S[x] + h.value(I) * s.V[x];
            }
            return g;
        });
        const Field tail = delayed_integral(ts, q);
        for (std::size_t x = 0; x < n; ++x) {
            density[x] += tail[x];
        }
    }
    return integrate_field(density, grid);
}

double lyapunov_endemic(const FieldState& state, const HistoryBuffer& hb, const KernelQuadrature& q,
                        const IncidenceFunction& f, const IncidenceFunction& h,
                        const Equilibrium& endemic, const Grid1D& grid)
{
    if (!(endemic.S > 0.0) || !(endemic.V > 0.0) || !(endemic.I > 0.0)) {
        throw DomainError("endemic functional needs S*, V*, I* > 0");
    }
    const std::size_t n = state.nodes();
    for (double I : state.I) {
        if (!(I > 0.0)) {
            throw DomainError("endemic functional is undefined where I = 0");
        }
    }
    Field density(n);
    for (std::size_t x = 0; x < n; ++x) {
        density[x] = endemic.S * phi(floored(state.S[x]) / endemic.S) +
                     endemic.V * phi(floored(state.V[x]) / endemic.V) +
                     endemic.I * phi(floored(state.I[x]) / endemic.I);
    }

    const double horizon = *std::max_element(q.nodes.begin(), q.nodes.end());
    if (horizon > 0.0) {
        const double sf = endemic.S * f.value(endemic.I);
        const double vh = endemic.V * h.value(endemic.I);
        const TimeSeries ts = collect(state, hb, horizon, [&](const FieldState& s) {
            Field g(s.nodes());
            for (std::size_t x = 0; x < g.size(); ++x) {
                const double I = std::max(s.I[x], 0.0);
                double v = 0.0;
                if (sf > 0.0) {
                    v += sf * phi(floored(s.S[x] * f.value(I)) / sf);
                }
                if (vh > 0.0) {
                    v += vh * phi(floored(s.V[x] * h.value(I)) / vh);
                }
                g[x] = v;
            }
            return g;
        });
        const Field tail = delayed_integral(ts, q);
        for (std::size_t x = 0; x < n; ++x) {
            density[x] += tail[x];
        }
    }
    return integrate_field(density, grid);
}

double sup_distance(const FieldState& state, const Equilibrium& e)
{
    double d = 0.0;
    for (std::size_t x = 0; x < state.nodes(); ++x) {
        d = std::max({d, std::fabs(state.S[x] - e.S), std::fabs(state.V[x] - e.V),
                      std::fabs(state.I[x] - e.I)});
    }
    return d;
}

} // namespace svir
