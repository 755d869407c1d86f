#pragma once

namespace pathchain {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pathchain
