#pragma once

#include "svir/incidence.hpp"
#include "svir/parameters.hpp"

#include <cstddef>

namespace svir {

enum class EquilibriumKind { disease_free, endemic };

/// Homogeneous steady state of the (S, V, I) subsystem.
struct Equilibrium {
    double S = 0.0;
    double V = 0.0;
    double I = 0.0;
    EquilibriumKind kind = EquilibriumKind::disease_free;
};

/// R balancing the removed-class equation at an equilibrium: (gamma1 V + gamma I) / mu.
double removed_at(const Equilibrium& e, const Parameters& p);

/// E0 = (Lambda/(mu+alpha), alpha Lambda/((mu+alpha)(gamma1+mu)), 0).
Equilibrium disease_free(const Parameters& p);

/// R0 = (S0 f'(0) + V0 h'(0)) / (gamma + mu + c).
double basic_reproduction_number(const Parameters& p, const IncidenceFunction& f,
                                 const IncidenceFunction& h);

/// Scalar reduction whose positive roots are the endemic infected levels:
///
///   H(I) = Lambda f/(f+mu+alpha) + alpha Lambda h/((h+gamma1+mu)(f+mu+alpha)) - (gamma+mu+c) I
///
/// with f = f(I), h = h(I). H(0) = 0.
double endemic_H(double I, const Parameters& p, const IncidenceFunction& f, const IncidenceFunction& h);

/// Full record of an endemic root search.
struct EndemicSearch {
    Equilibrium equilibrium;
    double residual = 0.0;     ///< H(I*)
    double bracket_lo = 0.0;   ///< final bisection interval
    double bracket_hi = 0.0;
    double I_upper = 0.0;      ///< initial upper bracket
    int iterations = 0;
    std::size_t scan_points = 0;
    std::size_t sign_changes = 0; ///< over the log-spaced uniqueness scan
    double scan_root_lo = 0.0;    ///< scan cell containing the first sign change
    double scan_root_hi = 0.0;

    bool unique() const noexcept { return sign_changes == 1; }
};

inline constexpr int endemic_max_bisections = 100;
inline constexpr std::size_t endemic_scan_points = 1000;

/// Upper bracket Lambda (1 + alpha/(gamma1+mu)) / (gamma+mu+c) + 1; H < 0 beyond it.
double endemic_upper_bound(const Parameters& p);

/// Bisection on H over (0, I_upper] followed by a log-spaced sign scan.
/// Throws NoEndemicEquilibrium if R0 <= 1 and SearchFailure if H(I_upper) >= 0
/// or no positive H value is found below the root.
EndemicSearch solve_endemic(const Parameters& p, const IncidenceFunction& f, const IncidenceFunction& h);

Equilibrium endemic_equilibrium(const Parameters& p, const IncidenceFunction& f,
                                const IncidenceFunction& h);

/// Two routes to H'(0): a central difference of endemic_H at I = 1e-6 (lhs) and
/// (gamma+mu+c)(R0 - 1) (rhs).
struct HPrimeIdentity {
    double lhs = 0.0;
    double rhs = 0.0;
};

inline constexpr double hprime_probe_point = 1e-6;

HPrimeIdentity hprime_zero_identity(const Parameters& p, const IncidenceFunction& f,
                                    const IncidenceFunction& h);

} // namespace svir
