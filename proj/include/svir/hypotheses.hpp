#pragma once

#include "svir/incidence.hpp"

#include <cstddef>
#include <optional>
#include <string>

namespace svir {

/// Which incidence function and which condition failed first.
struct HypothesisViolation {
    std::string condition; ///< e.g. "f(I) > 0", "h'(I) > 0", "f''(I) <= 0"
    double I = 0.0;
    double value = 0.0; ///< the offending value
};

struct HypothesisReport {
    bool h1_holds = true;
    bool h2_holds = true;
    std::optional<HypothesisViolation> first_violation;
    double I_max = 0.0;
    std::size_t n_samples = 0;
};

inline constexpr double default_hypothesis_I_max = 1e3;
inline constexpr std::size_t default_hypothesis_samples = 10000;
/// Rounding allowance on the weak concavity condition.
inline constexpr double concavity_tolerance = 1e-12;

/// Samples I = I_max * i / n_samples for i = 1..n_samples and checks
///   (H1) f(I) > 0, h(I) > 0
///   (H2) f'(I) > 0, h'(I) > 0 (strict), f''(I) <= 0, h''(I) <= 0 (up to 1e-12)
HypothesisReport check_hypotheses(const IncidenceFunction& f, const IncidenceFunction& h,
                                  double I_max = default_hypothesis_I_max,
                                  std::size_t n_samples = default_hypothesis_samples);

} // namespace svir
