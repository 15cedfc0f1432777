#pragma once

namespace hetlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hetlab
