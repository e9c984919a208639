#ifndef RABSIM_VERSION_HPP
#define RABSIM_VERSION_HPP

namespace rabsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rabsim

#endif  // RABSIM_VERSION_HPP
