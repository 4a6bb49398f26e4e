#pragma once

#include "svir/delay.hpp"
#include "svir/equilibria.hpp"
#include "svir/incidence.hpp"
#include "svir/spatial.hpp"
#include "svir/state.hpp"

#include <cstddef>
#include <optional>

namespace svir {

/// Fields are floored here before any logarithm.
inline constexpr double log_floor = 1e-30;

/// phi(x) = x - 1 - ln x, the Volterra-type kernel of the Lyapunov functionals.
double phi(double x);

/// N = integral of S + V + I + R over [0, 1].
double total_mass(const FieldState& state, const Grid1D& grid);

/// Disease-free functional L = int (L1 + L2) dx with
///   L1 = I + S0 phi(S/S0) + V0 phi(V/V0)
///   L2 = sum_j w_j int_{t - tau_j}^{t} [f(I(u)) S(u) + h(I(u)) V(u)] du.
/// Inner time integrals use the trapezoid rule over stored snapshots; `state`
/// closes the window at state.t. Throws DomainError if S0 or V0 is not positive.
double lyapunov_dfe(const FieldState& state, const HistoryBuffer& hb, const KernelQuadrature& q,
                    const IncidenceFunction& f, const IncidenceFunction& h,
                    const Equilibrium& dfe, const Grid1D& grid);

/// Endemic functional H = int (H1 + H2) dx with
///   H1 = S* phi(S/S*) + V* phi(V/V*) + I* phi(I/I*)
///   H2 = sum_j w_j int_{t - tau_j}^{t} [S* f(I*) phi(S f(I) / (S* f(I*)))
///                                       + V* h(I*) phi(V h(I) / (V* h(I*)))] du.
/// Throws DomainError if I <= 0 anywhere in `state`.
double lyapunov_endemic(const FieldState& state, const HistoryBuffer& hb, const KernelQuadrature& q,
                        const IncidenceFunction& f, const IncidenceFunction& h,
                        const Equilibrium& endemic, const Grid1D& grid);

/// max over nodes of |S - S_e|, |V - V_e|, |I - I_e|.
double sup_distance(const FieldState& state, const Equilibrium& e);

struct DiagnosticsRecord {
    double t = 0.0;
    double N = 0.0;
    std::optional<double> L_dfe;
    std::optional<double> H_endemic;
    double dist_dfe = 0.0;
    std::optional<double> dist_endemic;
    std::size_t clamp_count = 0;
};

} // namespace svir
