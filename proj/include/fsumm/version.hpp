#ifndef FSUMM_VERSION_HPP
#define FSUMM_VERSION_HPP

namespace fsumm {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fsumm

#endif  // FSUMM_VERSION_HPP
