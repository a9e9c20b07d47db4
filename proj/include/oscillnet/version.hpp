#pragma once

namespace oscillnet {

inline constexpr const char* kToolName = "oscillnet";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace oscillnet
