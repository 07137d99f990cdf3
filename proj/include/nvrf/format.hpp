#pragma once

#include <charconv>
#include <cstdint>
#include <string>

namespace nvrf {

/// Scientific notation with 9 significant digits, locale independent.
inline std::string format_sci(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::scientific, 8);
  return std::string(buf, res.ptr);
}

inline std::string format_int(std::int64_t v) {
  char buf[24];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

} // namespace nvrf
