#pragma once

// Locale-independent float formatting with shortest round-trip precision.

#include <charconv>
#include <cmath>
#include <string>

namespace thermoring {

// Formats a double so that parsing the result recovers the exact bits.
// Infinities render as "inf"/"-inf"; used by every CSV/JSON emitter so
// outputs are byte-stable across platforms and locales.
inline std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;  // to_chars cannot fail with this buffer size for doubles
  return std::string(buf, ptr);
}

}  // namespace thermoring
