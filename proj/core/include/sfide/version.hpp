#pragma once

namespace sfide {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sfide
