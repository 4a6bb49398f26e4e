#include "svir/hypotheses.hpp"

#include "svir/errors.hpp"

#include <string>

namespace svir {

HypothesisReport check_hypotheses(const IncidenceFunction& f, const IncidenceFunction& h,
                                  double I_max, std::size_t n_samples)
{
    if (!(I_max > 0.0) || n_samples < 2) {
        throw ConfigError("hypothesis check needs I_max > 0 and n_samples >= 2");
    }
    HypothesisReport report;
    report.I_max = I_max;
    report.n_samples = n_samples;

    auto note = [&](bool& flag, std::string condition, double I, double value) {
        flag = false;
        if (!report.first_violation) {
            report.first_violation = HypothesisViolation{std::move(condition), I, value};
        }
    };

    const struct {
        const IncidenceFunction* fn;
        const char* name;
    } functions[] = {{&f, "f"}, {&h, "h"}};

    for (std::size_t i = 1; i <= n_samples; ++i) {
        const double I = I_max * static_cast<double>(i) / static_cast<double>(n_samples);
        for (const auto& [fn, name] : functions) {
            const double v = fn->value(I);
            if (!(v > 0.0)) {
                note(report.h1_holds, std::string(name) + "(I) > 0", I, v);
            }
        }
        for (const auto& [fn, name] : functions) {
            const auto d = fn->derivatives(I);
            if (!(d.first > 0.0)) {
                note(report.h2_holds, std::string(name) + "'(I) > 0", I, d.first);
            }
            if (!(d.second <= concavity_tolerance)) {
                note(report.h2_holds, std::string(name) + "''(I) <= 0", I, d.second);
            }
        }
    }
    return report;
}

} // namespace svir
