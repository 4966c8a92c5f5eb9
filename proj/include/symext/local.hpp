#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "ratfunc.hpp"
#include "roots.hpp"

namespace symext {

inline RatFunc normalize(Poly num, Poly den) { return RatFunc(std::move(num), std::move(den)); }

/// A rational point of the projective line: Finite(a) or Infinity.
class PointP1 {
 public:
  static PointP1 finite(const Rational& a) { return PointP1(a); }
  static PointP1 infinity() { return PointP1(); }

  bool is_infinity() const { return !coord_.has_value(); }
  const Rational& coordinate() const { return *coord_; }

  friend bool operator==(const PointP1& a, const PointP1& b) { return a.coord_ == b.coord_; }
  /// Finite points by coordinate, Infinity last.
  friend bool operator<(const PointP1& a, const PointP1& b) {
    if (a.is_infinity()) return false;
    if (b.is_infinity()) return true;
    return a.coordinate() < b.coordinate();
  }

 private:
  PointP1() = default;
  explicit PointP1(const Rational& a) : coord_(a) {}
  std::optional<Rational> coord_;
};

inline std::string to_string(const PointP1& x) { return x.is_infinity() ? "inf" : to_string(x.coordinate()); }

inline PointP1 parse_point(std::string_view text) {
  if (text == "inf" || text == "infinity") return PointP1::infinity();
  return PointP1::finite(parse_rational(text));
}

/// Coefficients c_1..c_m of u^-1..u^-m; trailing zeros trimmed.
using PolarCoeffs = std::vector<Rational>;

inline void trim(PolarCoeffs& c) {
  while (!c.empty() && is_zero(c.back())) c.pop_back();
}

struct PolarPart {
  PointP1 point = PointP1::infinity();
  PolarCoeffs coeffs;

  bool is_zero() const { return coeffs.empty(); }
  int order() const { return static_cast<int>(coeffs.size()); }
  friend bool operator==(const PolarPart&, const PolarPart&) = default;
};

/// Truncated Laurent series: coeffs[i] multiplies u^(start + i).
struct Laurent {
  int start = 0;
  std::vector<Rational> coeffs;

  Rational at(int k) const {
    int i = k - start;
    if (i < 0 || i >= static_cast<int>(coeffs.size())) return Rational(0);
    return coeffs[static_cast<std::size_t>(i)];
  }
};

/// Expansion of f in the local uniformizer at x up to and including u^upto.
/// At Finite(a), u = z - a and the twist is ignored (the U_0 trivialization).
/// At Infinity, u = 1/z and the expanded function is u^twist * f(1/u), which
/// is the local value of f viewed as a rational section of O(twist).
inline Laurent expand(const RatFunc& f, const PointP1& x, int twist, int upto) {
  Laurent out;
  if (f.is_zero()) {
    out.start = upto + 1;
    return out;
  }
  Poly n, d;
  if (x.is_infinity()) {
    n = f.num().reversed();
    d = f.den().reversed();
    out.start = twist + f.den().degree() - f.num().degree();
  } else {
    n = f.num().shifted(x.coordinate());
    d = f.den().shifted(x.coordinate());
    int kn = n.low_order(), kd = d.low_order();
    n = n.drop_low(kn);
    d = d.drop_low(kd);
    out.start = kn - kd;
  }
  out.coeffs = series_divide(n, d, upto - out.start + 1);
  return out;
}

/// Order of vanishing at x of f viewed as a section of O(twist); twist only
/// matters at Infinity.
inline int valuation(const RatFunc& f, const PointP1& x, int twist = 0) {
  if (f.is_zero()) fail(ErrorCode::ZeroFunction, "valuation of the zero function");
  if (x.is_infinity()) return twist + f.den().degree() - f.num().degree();
  const Rational& a = x.coordinate();
  int k = 0;
  Poly n = f.num(), d = f.den();
  Poly lin = Poly::linear(a);
  for (;;) {
    auto [q, r] = divmod(n, lin);
    if (!r.is_zero()) break;
    n = q;
    ++k;
  }
  for (;;) {
    auto [q, r] = divmod(d, lin);
    if (!r.is_zero()) break;
    d = q;
    --k;
  }
  return k;
}

inline bool is_regular_at(const RatFunc& f, const PointP1& x, int twist = 0) {
  return f.is_zero() || valuation(f, x, twist) >= 0;
}

inline PolarPart polar_part(const RatFunc& f, const PointP1& x, int twist = 0) {
  PolarPart out{x, {}};
  if (f.is_zero()) return out;
  int v = valuation(f, x, twist);
  if (v >= 0) return out;
  Laurent l = expand(f, x, twist, -1);
  for (int k = 1; k <= -v; ++k) out.coeffs.push_back(l.at(-k));
  trim(out.coeffs);
  return out;
}

/// The rational function whose only polar part is p, and at Infinity whose
/// twisted local expansion is exactly the given polar tail.
/// Finite(a): sum c_k (z - a)^-k.  Infinity: sum c_k z^(k + twist).
inline RatFunc polar_to_ratfunc(const PolarPart& p, int twist = 0) {
  RatFunc out;
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    const Rational& c = p.coeffs[i];
    if (is_zero(c)) continue;
    int k = static_cast<int>(i) + 1;
    if (p.point.is_infinity()) {
      out += RatFunc(c) * RatFunc::z_pow(k + twist);
    } else {
      out += RatFunc(Poly(c), Poly::linear(p.point.coordinate()).pow(k));
    }
  }
  return out;
}

/// Finite poles of f; every pole must be rational.
inline std::vector<PointP1> finite_poles(const RatFunc& f) {
  std::vector<PointP1> out;
  if (f.is_polynomial()) return out;
  RootSplit split = rational_roots(f.den());
  if (split.rest.degree() >= 1)
    fail(ErrorCode::UnsupportedPoleField, "denominator factor " + to_string(split.rest) + " has no rational root");
  for (const auto& [a, m] : split.roots) out.push_back(PointP1::finite(a));
  return out;
}

/// Principal part of f as a rational section of O(d): all finite polar parts
/// in ascending point order, then the Infinity polar part in the U_inf
/// trivialization. Empty iff f is a global section of O(d).
inline std::vector<PolarPart> full_principal_part(const RatFunc& f, int d) {
  std::vector<PolarPart> out;
  if (f.is_zero()) return out;
  for (const auto& x : finite_poles(f)) {
    PolarPart pp = polar_part(f, x);
    if (!pp.is_zero()) out.push_back(std::move(pp));
  }
  PolarPart at_inf = polar_part(f, PointP1::infinity(), d);
  if (!at_inf.is_zero()) out.push_back(std::move(at_inf));
  return out;
}

/// Global section of O(d): polynomial of degree <= d.
inline bool is_global_section(const RatFunc& f, int d) {
  return f.is_zero() || (f.is_polynomial() && f.num().degree() <= d);
}

}  // namespace symext
