#pragma once

namespace rankguard {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rankguard
