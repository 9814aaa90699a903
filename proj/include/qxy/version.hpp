#pragma once

namespace qxy {

inline constexpr const char* kToolName = "qxy";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace qxy
