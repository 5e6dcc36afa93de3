#pragma once

namespace pdcw {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pdcw
