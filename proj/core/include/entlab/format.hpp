#ifndef ENTLAB_FORMAT_HPP
#define ENTLAB_FORMAT_HPP

#include <cstdio>
#include <string>

namespace entlab {

/// All floating-point output is printed with 12 significant digits so that
/// repeated runs are byte-comparable.
inline std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

} // namespace entlab

#endif
