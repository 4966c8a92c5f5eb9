#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace symext {

/// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
/// positive denominator) as long as every constructor path calls canonicalize().
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) fail(ErrorCode::ZeroDenominator, "rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Parses "a", "-a" or "a/b" with decimal integers.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) fail(ErrorCode::ParseError, "empty rational");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_slash = false;
  bool digit_before = false, digit_after = false;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] == '/') {
      if (seen_slash) fail(ErrorCode::ParseError, "bad rational '" + s + "'");
      seen_slash = true;
    } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      (seen_slash ? digit_after : digit_before) = true;
    } else {
      fail(ErrorCode::ParseError, "bad rational '" + s + "'");
    }
  }
  if (!digit_before || (seen_slash && !digit_after)) fail(ErrorCode::ParseError, "bad rational '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Rational r;
  if (r.set_str(s, 10) != 0) fail(ErrorCode::ParseError, "bad rational '" + s + "'");
  if (r.get_den() == 0) fail(ErrorCode::ZeroDenominator, "rational '" + s + "'");
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

}  // namespace symext
