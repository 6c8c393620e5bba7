#pragma once

namespace ccmdp {

inline constexpr const char* kVersion = "1.0.0";

} // namespace ccmdp
