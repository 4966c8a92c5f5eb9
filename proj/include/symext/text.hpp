#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "ratfunc.hpp"

namespace symext {

namespace detail {

/// Recursive-descent reader for rational expressions in z:
///   expr  := term (('+' | '-') term)*
///   term  := unary (('*' | '/') unary)*
///   unary := ('+' | '-') unary | power
///   power := atom ('^' ['-'] integer)?
///   atom  := integer | 'z' | '(' expr ')'
class ExprReader {
 public:
  explicit ExprReader(std::string_view s) : s_(s) {}

  RatFunc read() {
    RatFunc v = expr();
    skip();
    if (pos_ != s_.size()) error("trailing input");
    return v;
  }

 private:
  [[noreturn]] void error(const std::string& why) const {
    fail(ErrorCode::ParseError, why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFunc expr() {
    RatFunc v = term();
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }
  RatFunc term() {
    RatFunc v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        RatFunc d = unary();
        if (d.is_zero()) error("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }
  RatFunc unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  RatFunc power() {
    RatFunc base = atom();
    if (!eat('^')) return base;
    bool negative = eat('-');
    skip();
    long e = integer_literal();
    if (e > 64) error("exponent too large");
    RatFunc r(1);
    for (long k = 0; k < e; ++k) r *= base;
    if (negative) {
      if (r.is_zero()) error("zero to a negative power");
      r = r.inverse();
    }
    return r;
  }
  long integer_literal() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected an integer");
    std::string digits(s_.substr(start, pos_ - start));
    if (digits.size() > 6) error("exponent too large");
    return std::stol(digits);
  }
  RatFunc atom() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc v = expr();
      if (!eat(')')) error("expected ')'");
      return v;
    }
    if (c == 'z') {
      ++pos_;
      return RatFunc::z();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RatFunc(Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
    }
    error(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Reads any rational expression in z; the canonical printer's output reads
/// back to the same value, so print(parse(print(f))) == print(f).
inline RatFunc parse_ratfunc(std::string_view text) { return detail::ExprReader(text).read(); }

inline Poly parse_poly(std::string_view text) {
  RatFunc f = parse_ratfunc(text);
  if (!f.is_polynomial()) fail(ErrorCode::ParseError, "'" + std::string(text) + "' is not a polynomial");
  return f.num();
}

}  // namespace symext
