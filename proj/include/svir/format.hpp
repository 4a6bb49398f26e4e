#pragma once

#include <cstdio>
#include <optional>
#include <string>

namespace svir {

/// 17 significant digits: round-trips every double, so repeated runs diff cleanly.
inline std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Empty string for a missing value (an empty CSV cell).
inline std::string format_number(const std::optional<double>& v)
{
    return v ? format_number(*v) : std::string();
}

} // namespace svir
