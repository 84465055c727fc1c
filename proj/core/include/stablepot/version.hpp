#pragma once

namespace stablepot {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace stablepot
