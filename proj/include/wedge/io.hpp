#pragma once

#include <cstdio>
#include <string>

// Deterministic number formatting for every file the tools emit: shortest
// round-trip-exact decimal via %.17g, locale-independent.

namespace wedge {

inline std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::string fmt(int x) { return std::to_string(x); }
inline std::string fmt(long x) { return std::to_string(x); }
inline std::string fmt(std::size_t x) { return std::to_string(x); }

}  // namespace wedge
