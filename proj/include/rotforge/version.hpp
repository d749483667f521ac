#pragma once

namespace rotforge {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rotforge
