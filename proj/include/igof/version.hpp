#pragma once

namespace igof {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace igof
