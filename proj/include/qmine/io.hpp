#pragma once

#include <charconv>
#include <string>

namespace qmine::io {

// Shortest round-trip decimal form; output is byte-stable for a given build.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace qmine::io
