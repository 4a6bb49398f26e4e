#pragma once

#include <string>
#include <string_view>

namespace svir {

enum class IncidenceFamily { bilinear, exponential_damped, saturated, rational_quadratic };

std::string_view to_string(IncidenceFamily family);
/// Throws ConfigError on an unknown name.
IncidenceFamily parse_incidence_family(std::string_view name);

struct IncidenceDerivatives {
    double first = 0.0;
    double second = 0.0;
};

/**
 * Incidence rate I -> f(I) from one of the four closed-form families:
 *
 *   bilinear            beta * I
 *   exponential_damped  beta * I * exp(-m I)
 *   saturated           beta * I / (1 + a1 I)
 *   rational_quadratic  beta * I / (1 + w1 I + w2 I^2)
 *
 * Immutable after construction. All members are defined for I >= 0 and
 * throw DomainError for negative I.
 */
class IncidenceFunction {
public:
    static IncidenceFunction bilinear(double beta);
    static IncidenceFunction exponential_damped(double beta, double m);
    static IncidenceFunction saturated(double beta, double a1);
    static IncidenceFunction rational_quadratic(double beta, double omega1, double omega2);

    double value(double I) const;
    IncidenceDerivatives derivatives(double I) const;

    IncidenceFamily family() const noexcept { return family_; }
    double beta() const noexcept { return beta_; }
    /// Family parameters: m, a1 or (omega1, omega2). Unused slots are zero.
    double shape1() const noexcept { return p1_; }
    double shape2() const noexcept { return p2_; }

    std::string describe() const;

private:
    IncidenceFunction(IncidenceFamily family, double beta, double p1, double p2);

    IncidenceFamily family_;
    double beta_;
    double p1_;
    double p2_;
};

} // namespace svir
