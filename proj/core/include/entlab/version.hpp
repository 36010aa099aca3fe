#ifndef ENTLAB_VERSION_HPP
#define ENTLAB_VERSION_HPP

namespace entlab {

inline constexpr const char* kVersion = "0.1.0";

} // namespace entlab

#endif
