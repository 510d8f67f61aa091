#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace wavediv {

/// 17-significant-digit formatting: round-trips doubles exactly. '-inf' and
/// 'inf' print literally (the sentinel contract for divergence exponents).
inline std::string fmt17(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace wavediv
