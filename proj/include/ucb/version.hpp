#pragma once

namespace ucb {

inline constexpr const char* kToolName = "ucbench";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace ucb
