#pragma once

namespace pfree {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pfree
