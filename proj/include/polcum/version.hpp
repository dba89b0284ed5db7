#pragma once

namespace polcum {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace polcum
