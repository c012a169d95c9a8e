#pragma once

namespace rsequil {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace rsequil
