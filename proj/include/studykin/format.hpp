#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace studykin {

/// Shortest decimal string that parses back to the same double.
inline std::string format_double(double value) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  if (result.ec != std::errc()) return "nan";
  return std::string(buf, result.ptr);
}

}  // namespace studykin
