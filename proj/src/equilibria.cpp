#include "svir/equilibria.hpp"

#include "svir/errors.hpp"

#include <cmath>
#include <string>

namespace svir {

double removed_at(const Equilibrium& e, const Parameters& p)
{
    return (p.gamma1 * e.V + p.gamma * e.I) / p.mu;
}

Equilibrium disease_free(const Parameters& p)
{
    p.validate();
    const double S0 = p.Lambda / (p.mu + p.alpha);
    const double V0 = p.alpha * p.Lambda / ((p.mu + p.alpha) * (p.gamma1 + p.mu));
    return {S0, V0, 0.0, EquilibriumKind::disease_free};
}

double basic_reproduction_number(const Parameters& p, const IncidenceFunction& f,
                                 const IncidenceFunction& h)
{
    const Equilibrium e0 = disease_free(p);
    return (e0.S * f.derivatives(0.0).first + e0.V * h.derivatives(0.0).first) /
           p.infected_exit_rate();
}

double endemic_H(double I, const Parameters& p, const IncidenceFunction& f, const IncidenceFunction& h)
{
    const double fi = f.value(I);
    const double hi = h.value(I);
    const double s_den = fi + p.mu + p.alpha;
    const double v_den = (hi + p.gamma1 + p.mu) * s_den;
    return p.Lambda * fi / s_den + p.alpha * p.Lambda * hi / v_den - p.infected_exit_rate() * I;
}

double endemic_upper_bound(const Parameters& p)
{
    return p.Lambda * (1.0 + p.alpha / (p.gamma1 + p.mu)) / p.infected_exit_rate() + 1.0;
}

EndemicSearch solve_endemic(const Parameters& p, const IncidenceFunction& f, const IncidenceFunction& h)
{
    const double r0 = basic_reproduction_number(p, f, h);
    if (!(r0 > 1.0)) {
        throw NoEndemicEquilibrium("no endemic equilibrium: R0 = " + std::to_string(r0) + " <= 1");
    }
    auto H = [&](double I) { return endemic_H(I, p, f, h); };

    EndemicSearch out;
    out.I_upper = endemic_upper_bound(p);
    double hi = out.I_upper;
    if (!(H(hi) < 0.0)) {
        throw SearchFailure("endemic search: H(I_upper) = " + std::to_string(H(hi)) +
                            " is not negative at I_upper = " + std::to_string(hi));
    }

    // H'(0) > 0, so H is positive on some (0, eps); walk down geometrically to find it.
    double lo = hi;
    while (!(H(lo) > 0.0)) {
        hi = lo;
        lo *= 0.5;
        if (lo < 1e-300) {
            throw SearchFailure("endemic search: no positive H found on (0, " +
                                std::to_string(out.I_upper) + "]; R0 = " + std::to_string(r0) +
                                " is too close to 1");
        }
    }

    int it = 0;
    for (; it < endemic_max_bisections; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (H(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double I_star = std::fabs(H(lo)) <= std::fabs(H(hi)) ? lo : hi;
    out.iterations = it;
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    out.residual = H(I_star);

    const double fi = f.value(I_star);
    const double S_star = p.Lambda / (fi + p.mu + p.alpha);
    const double V_star = p.alpha * S_star / (h.value(I_star) + p.gamma1 + p.mu);
    out.equilibrium = {S_star, V_star, I_star, EquilibriumKind::endemic};

    // Uniqueness witness: count sign changes of H on a log grid reaching below the root.
    const double scan_lo = std::fmin(1e-12 * out.I_upper, 0.5 * lo);
    const double ratio = std::log(out.I_upper / scan_lo);
    out.scan_points = endemic_scan_points;
    double prev_I = scan_lo;
    double prev = H(scan_lo);
    for (std::size_t i = 1; i < endemic_scan_points; ++i) {
        const double I = scan_lo * std::exp(ratio * static_cast<double>(i) /
                                            static_cast<double>(endemic_scan_points - 1));
        const double value = H(I);
        if ((prev > 0.0 && value <= 0.0) || (prev < 0.0 && value >= 0.0)) {
            if (out.sign_changes == 0) {
                out.scan_root_lo = prev_I;
                out.scan_root_hi = I;
            }
            ++out.sign_changes;
        }
        if (value != 0.0) {
            prev = value;
        }
        prev_I = I;
    }
    return out;
}

Equilibrium endemic_equilibrium(const Parameters& p, const IncidenceFunction& f,
                                const IncidenceFunction& h)
{
    return solve_endemic(p, f, h).equilibrium;
}

HPrimeIdentity hprime_zero_identity(const Parameters& p, const IncidenceFunction& f,
                                    const IncidenceFunction& h)
{
    const double step = 0.5 * hprime_probe_point;
    const double lhs = (endemic_H(hprime_probe_point + step, p, f, h) -
                        endemic_H(hprime_probe_point - step, p, f, h)) /
                       (2.0 * step);
    const double rhs = p.infected_exit_rate() * (basic_reproduction_number(p, f, h) - 1.0);
    return {lhs, rhs};
}

} // namespace svir
