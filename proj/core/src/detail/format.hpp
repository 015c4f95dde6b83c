#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace critsqueeze::detail {

/// 12 significant digits, locale independent, "inf"/"-inf"/"nan" spelled out.
inline std::string fmt12(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace critsqueeze::detail
