#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace symext {

/// Dense univariate polynomial over the rationals in the variable z,
/// coefficients in ascending degree. The zero polynomial has no coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }
  explicit Poly(const Rational& c) {
    if (!symext::is_zero(c)) coeffs_.push_back(c);
  }

  static Poly constant(long c) { return Poly(Rational(c)); }
  static Poly monomial(const Rational& c, int degree) {
    if (symext::is_zero(c)) return {};
    std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return Poly(std::move(v));
  }
  static Poly z() { return monomial(Rational(1), 1); }
  /// z - a
  static Poly linear(const Rational& a) { return Poly({Rational(-a), Rational(1)}); }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int k) const {
    if (k < 0 || k > degree()) return Rational(0);
    return coeffs_[static_cast<std::size_t>(k)];
  }
  const Rational& lead() const { return coeffs_.back(); }

  Rational operator()(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly monic() const {
    if (is_zero()) return {};
    Poly r = *this;
    Rational inv = 1 / lead();
    for (auto& c : r.coeffs_) c *= inv;
    return r;
  }

  Poly derivative() const {
    std::vector<Rational> v;
    for (int k = 1; k <= degree(); ++k) v.push_back(coeffs_[static_cast<std::size_t>(k)] * k);
    return Poly(std::move(v));
  }

  /// p(z + a): the Taylor expansion of p around a, as a polynomial in the shift.
  Poly shifted(const Rational& a) const {
    std::vector<Rational> acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      // acc = acc * (u + a) + c
      std::vector<Rational> next(acc.size() + 1, Rational(0));
      for (std::size_t i = 0; i < acc.size(); ++i) {
        next[i + 1] += acc[i];
        next[i] += acc[i] * a;
      }
      next[0] += *it;
      acc = std::move(next);
    }
    return Poly(std::move(acc));
  }

  /// z^deg * p(1/z); the constant term of the result is lead().
  Poly reversed() const {
    std::vector<Rational> v(coeffs_.rbegin(), coeffs_.rend());
    return Poly(std::move(v));
  }

  /// Number of trailing factors z (order of vanishing at 0). Zero for p = 0.
  int low_order() const {
    int k = 0;
    while (k <= degree() && symext::is_zero(coeffs_[static_cast<std::size_t>(k)])) ++k;
    return is_zero() ? 0 : k;
  }

  /// p / z^k, assuming z^k divides p.
  Poly drop_low(int k) const {
    if (k <= 0) return *this;
    if (k > degree()) return {};
    return Poly(std::vector<Rational>(coeffs_.begin() + k, coeffs_.end()));
  }

  Poly& operator+=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Rational& c) {
    if (symext::is_zero(c)) {
      coeffs_.clear();
      return *this;
    }
    for (auto& x : coeffs_) x *= c;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (symext::is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(v));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  Poly pow(int e) const {
    Poly r = Poly::constant(1), b = *this;
    while (e > 0) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && symext::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

/// Euclidean division a = quot * b + rem with deg rem < deg b.
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(ErrorCode::ZeroDenominator, "polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) return {Poly{}, a};
  std::vector<Rational> quot(static_cast<std::size_t>(da - db) + 1, Rational(0));
  Rational inv = 1 / b.lead();
  for (int k = da; k >= db; --k) {
    Rational c = rem[static_cast<std::size_t>(k)] * inv;
    quot[static_cast<std::size_t>(k - db)] = c;
    if (is_zero(c)) continue;
    for (int i = 0; i <= db; ++i) rem[static_cast<std::size_t>(k - db + i)] -= c * b.coeff(i);
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

/// Monic gcd; gcd(0, 0) = 0.
inline Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

/// Truncated power series quotient a / b mod u^terms; requires b(0) != 0.
inline std::vector<Rational> series_divide(const Poly& a, const Poly& b, int terms) {
  std::vector<Rational> out;
  if (terms <= 0) return out;
  Rational inv = 1 / b.coeff(0);
  out.reserve(static_cast<std::size_t>(terms));
  for (int k = 0; k < terms; ++k) {
    Rational acc = a.coeff(k);
    for (int i = 1; i <= std::min(k, b.degree()); ++i) acc -= b.coeff(i) * out[static_cast<std::size_t>(k - i)];
    out.push_back(acc * inv);
  }
  return out;
}

namespace detail {

inline std::string monomial_text(int k) {
  if (k == 0) return "";
  if (k == 1) return "z";
  return "z^" + std::to_string(k);
}

}  // namespace detail

/// Sparse text form, descending degree: "z^3 - 2*z + 1/2". Zero prints as "0".
inline std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    Rational c = p.coeff(k);
    if (is_zero(c)) continue;
    bool negative = sgn(c) < 0;
    Rational mag = abs(c);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (k == 0) {
      out += to_string(mag);
    } else {
      if (mag != 1) out += to_string(mag) + "*";
      out += detail::monomial_text(k);
    }
  }
  return out;
}

}  // namespace symext
