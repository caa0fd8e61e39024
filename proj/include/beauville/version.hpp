#pragma once

namespace beauville {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace beauville
