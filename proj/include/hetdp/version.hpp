#ifndef HETDP_VERSION_HPP
#define HETDP_VERSION_HPP

namespace hetdp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hetdp

#endif  // HETDP_VERSION_HPP
