#include "svir/incidence.hpp"

#include "svir/errors.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace svir {

namespace {

void require_domain(double I)
{
    if (!(I >= 0.0)) {
        throw DomainError("incidence evaluated at negative or NaN I = " + std::to_string(I));
    }
}

void require_shape(const char* name, double value, bool strictly_positive)
{
    const bool ok = std::isfinite(value) && (strictly_positive ? value > 0.0 : value >= 0.0);
    if (!ok) {
        throw ConfigError(std::string("incidence parameter ") + name +
                          (strictly_positive ? " must be > 0" : " must be >= 0") + ", got " +
                          std::to_string(value));
    }
}

} // namespace

std::string_view to_string(IncidenceFamily family)
{
    switch (family) {
    case IncidenceFamily::bilinear:
        return "bilinear";
    case IncidenceFamily::exponential_damped:
        return "exponential_damped";
    case IncidenceFamily::saturated:
        return "saturated";
    case IncidenceFamily::rational_quadratic:
        return "rational_quadratic";
    }
    return "unknown";
}

IncidenceFamily parse_incidence_family(std::string_view name)
{
    for (auto family : {IncidenceFamily::bilinear, IncidenceFamily::exponential_damped,
                        IncidenceFamily::saturated, IncidenceFamily::rational_quadratic}) {
        if (name == to_string(family)) {
            return family;
        }
    }
    throw ConfigError("unknown incidence family '" + std::string(name) +
                      "' (expected bilinear, exponential_damped, saturated, rational_quadratic)");
}

IncidenceFunction::IncidenceFunction(IncidenceFamily family, double beta, double p1, double p2)
    : family_(family), beta_(beta), p1_(p1), p2_(p2)
{
    require_shape("beta", beta, false);
}

IncidenceFunction IncidenceFunction::bilinear(double beta)
{
    return {IncidenceFamily::bilinear, beta, 0.0, 0.0};
}

IncidenceFunction IncidenceFunction::exponential_damped(double beta, double m)
{
    require_shape("m", m, true);
    return {IncidenceFamily::exponential_damped, beta, m, 0.0};
}

IncidenceFunction IncidenceFunction::saturated(double beta, double a1)
{
    require_shape("a1", a1, true);
    return {IncidenceFamily::saturated, beta, a1, 0.0};
}

IncidenceFunction IncidenceFunction::rational_quadratic(double beta, double omega1, double omega2)
{
    require_shape("omega1", omega1, true);
    require_shape("omega2", omega2, true);
    return {IncidenceFamily::rational_quadratic, beta, omega1, omega2};
}

double IncidenceFunction::value(double I) const
{
    require_domain(I);
    switch (family_) {
    case IncidenceFamily::bilinear:
        return beta_ * I;
    case IncidenceFamily::exponential_damped:
        return beta_ * I * std::exp(-p1_ * I);
    case IncidenceFamily::saturated:
        return beta_ * I / (1.0 + p1_ * I);
    case IncidenceFamily::rational_quadratic:
        return beta_ * I / (1.0 + p1_ * I + p2_ * I * I);
    }
    return 0.0;
}

IncidenceDerivatives IncidenceFunction::derivatives(double I) const
{
    require_domain(I);
    switch (family_) {
    case IncidenceFamily::bilinear:
        return {beta_, 0.0};
    case IncidenceFamily::exponential_damped: {
        const double m = p1_;
        const double decay = std::exp(-m * I);
        return {beta_ * decay * (1.0 - m * I), beta_ * m * decay * (m * I - 2.0)};
    }
    case IncidenceFamily::saturated: {
        const double u = 1.0 + p1_ * I;
        return {beta_ / (u * u), -2.0 * beta_ * p1_ / (u * u * u)};
    }
    case IncidenceFamily::rational_quadratic: {
        const double w1 = p1_;
        const double w2 = p2_;
        const double d = 1.0 + w1 * I + w2 * I * I;
        const double dd = w1 + 2.0 * w2 * I;
        const double numer = 1.0 - w2 * I * I; // d - I*dd
        return {beta_ * numer / (d * d),
                beta_ * (-2.0 * w2 * I * d - 2.0 * numer * dd) / (d * d * d)};
    }
    }
    return {};
}

std::string IncidenceFunction::describe() const
{
    char buf[160];
    switch (family_) {
    case IncidenceFamily::bilinear:
        std::snprintf(buf, sizeof buf, "bilinear(beta=%.12g)", beta_);
        break;
    case IncidenceFamily::exponential_damped:
        std::snprintf(buf, sizeof buf, "exponential_damped(beta=%.12g, m=%.12g)", beta_, p1_);
        break;
    case IncidenceFamily::saturated:
        std::snprintf(buf, sizeof buf, "saturated(beta=%.12g, a1=%.12g)", beta_, p1_);
        break;
    case IncidenceFamily::rational_quadratic:
        std::snprintf(buf, sizeof buf, "rational_quadratic(beta=%.12g, omega1=%.12g, omega2=%.12g)",
                      beta_, p1_, p2_);
        break;
    }
    return buf;
}

} // namespace svir
