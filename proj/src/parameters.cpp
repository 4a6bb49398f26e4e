#include "svir/parameters.hpp"

#include "svir/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace svir {

namespace {

void require_nonnegative(const char* name, double value)
{
    if (!std::isfinite(value) || value < 0.0) {
        throw ConfigError(std::string("parameter ") + name + " must be finite and >= 0, got " +
                          std::to_string(value));
    }
}

} // namespace

void Parameters::validate() const
{
    if (!std::isfinite(mu) || mu <= 0.0) {
        throw ConfigError("parameter mu must be > 0 (the mass bound Lambda/mu needs it), got " +
                          std::to_string(mu));
    }
    require_nonnegative("Lambda", Lambda);
    require_nonnegative("alpha", alpha);
    require_nonnegative("gamma1", gamma1);
    require_nonnegative("gamma", gamma);
    require_nonnegative("c", c);
    require_nonnegative("dS", dS);
    require_nonnegative("dV", dV);
    require_nonnegative("dI", dI);
    require_nonnegative("dR", dR);
    require_nonnegative("k", k);
}

double Parameters::max_diffusion() const noexcept
{
    return std::max({dS, dV, dI, dR});
}

} // namespace svir
