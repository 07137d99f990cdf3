#pragma once

namespace nvrf {

inline constexpr const char *kVersion = "1.0.0";

} // namespace nvrf
