// Exact rational scalars. GMP's mpq_class already maintains the canonical
// form we rely on everywhere (reduced, positive denominator); this header
// adds construction and the "p/q" wire format.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace evim {

using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p", "-p", "p/q" with arbitrary-precision decimal digits.
inline std::optional<Rat> parse_rat(std::string_view s) {
  if (s.empty()) return std::nullopt;
  auto is_int = [](std::string_view t) {
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string num, den = "1";
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    num = std::string(s.substr(0, slash));
    den = std::string(s.substr(slash + 1));
  } else {
    num = std::string(s);
  }
  if (!is_int(num) || !is_int(den)) return std::nullopt;
  Rat q;
  if (q.set_str(num + "/" + den, 10) != 0) return std::nullopt;
  if (q.get_den() == 0) return std::nullopt;
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace evim
