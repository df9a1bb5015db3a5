#pragma once

#include <cstdio>
#include <string>

namespace dlab {

/// fixed 17-significant-digit formatting so CSV digests are platform-stable
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace dlab
