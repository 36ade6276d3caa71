#pragma once

#include <cstdio>
#include <string>

namespace netlearn {

// All numeric CLI output goes through this: 12 significant digits, C locale.
inline std::string sig12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace netlearn
