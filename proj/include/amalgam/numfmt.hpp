#pragma once

#include <charconv>
#include <cmath>
#include <limits>
#include <string>

namespace amalgam {

/// Shortest decimal form that round-trips through parsing; "inf" for the
/// infinite exponent.
inline std::string fmt_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace amalgam
