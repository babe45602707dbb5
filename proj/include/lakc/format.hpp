#pragma once

#include <cstdio>
#include <string>

namespace lakc {

// Doubles rendered with 17 significant digits round-trip exactly.
inline std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace lakc
