#pragma once

namespace ptab {

inline constexpr const char* kToolName = "ptab";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace ptab
