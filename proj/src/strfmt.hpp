// Minimal message building for error strings; the toolchain's libstdc++
// predates <format>.

#ifndef EDCHROM_SRC_STRFMT_HPP
#define EDCHROM_SRC_STRFMT_HPP

#include <cstdio>
#include <sstream>
#include <string>

namespace edchrom::detail {

inline std::string num(double v, const char* fmt = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

template <class... Ts>
std::string cat(Ts&&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    return os.str();
}

} // namespace edchrom::detail

#endif
