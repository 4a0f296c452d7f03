#pragma once

namespace toricstab {
inline constexpr const char* kToolName = "toricstab";
inline constexpr const char* kVersion = "0.1.0";
}  // namespace toricstab
