#pragma once

namespace robustggm {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace robustggm
