#pragma once

#include <string>
#include <utility>

#include "poly.hpp"

namespace symext {

/// Element of the function field Q(z) of the projective line, always kept as
/// num/den with gcd(num, den) = 1 and den monic. Zero is 0/1.
class RatFunc {
 public:
  RatFunc() : den_(Poly::constant(1)) {}
  RatFunc(long c) : num_(Poly(Rational(c))), den_(Poly::constant(1)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const Rational& c) : num_(Poly(c)), den_(Poly::constant(1)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(Poly p) : num_(std::move(p)), den_(Poly::constant(1)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static RatFunc z() { return RatFunc(Poly::z()); }
  /// z^k for any integer k.
  static RatFunc z_pow(int k) {
    if (k >= 0) return RatFunc(Poly::monomial(Rational(1), k));
    return RatFunc(Poly::constant(1), Poly::monomial(Rational(1), -k));
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return is_polynomial() && num_.degree() <= 0; }
  Rational constant_value() const { return num_.coeff(0); }

  RatFunc inverse() const {
    if (is_zero()) fail(ErrorCode::ZeroDenominator, "inverse of the zero rational function");
    return RatFunc(den_, num_);
  }

  /// Value at a rational point where the function is regular.
  Rational operator()(const Rational& x) const {
    Rational d = den_(x);
    if (symext::is_zero(d)) fail(ErrorCode::ZeroDenominator, "evaluation at a pole");
    return num_(x) / d;
  }

  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a) {
    RatFunc r = a;
    r.num_ *= Rational(-1);
    return r;
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num_ * b.num_);
    // cross-cancel before multiplying to keep degrees small
    Poly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    Poly n1 = divmod(a.num_, g1).first, d2 = divmod(b.den_, g1).first;
    Poly n2 = divmod(b.num_, g2).first, d1 = divmod(a.den_, g2).first;
    RatFunc r;
    r.num_ = n1 * n2;
    r.den_ = d1 * d2;
    r.fix_sign();
    return r;
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

 private:
  void normalize() {
    if (den_.is_zero()) fail(ErrorCode::ZeroDenominator, "rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Poly::constant(1);
      return;
    }
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
    fix_sign();
  }
  // den monic
  void fix_sign() {
    Rational lc = den_.lead();
    if (lc != 1) {
      Rational inv = 1 / lc;
      num_ *= inv;
      den_ *= inv;
    }
  }

  Poly num_;
  Poly den_;
};

/// Canonical text: the numerator alone when den = 1, else "(num)/(den)".
inline std::string to_string(const RatFunc& f) {
  if (f.is_polynomial()) return to_string(f.num());
  return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

}  // namespace symext
