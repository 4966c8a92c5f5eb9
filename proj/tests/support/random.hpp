#pragma once

// Seeded generators for property tests. Every generator draws from an
// explicit engine so a failing case can be replayed from its seed.

#include <algorithm>
#include <ostream>
#include <random>
#include <vector>

#include "symext/symext.hpp"

namespace symext::testing {

using Engine = std::mt19937_64;

inline long uniform(Engine& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

inline Rational small_rational(Engine& g, long range = 5, long max_den = 3) {
  return make_rational(uniform(g, -range, range), uniform(g, 1, max_den));
}

inline Rational nonzero_rational(Engine& g, long range = 5, long max_den = 3) {
  Rational r;
  do r = small_rational(g, range, max_den);
  while (is_zero(r));
  return r;
}

inline Poly random_poly(Engine& g, int max_degree, long range = 4) {
  std::vector<Rational> c;
  int d = static_cast<int>(uniform(g, -1, max_degree));
  for (int k = 0; k <= d; ++k) c.push_back(small_rational(g, range, 2));
  return Poly(std::move(c));
}

/// Points drawn from a short fixed list so that supports collide often.
inline PointP1 random_finite_point(Engine& g) {
  static const long nums[] = {0, 1, -1, 2, -2, 1, 3};
  static const long dens[] = {1, 1, 1, 1, 1, 2, 2};
  std::size_t k = static_cast<std::size_t>(uniform(g, 0, 6));
  return PointP1::finite(make_rational(nums[k], dens[k]));
}

/// Rational function with poles only at rational points from the list above,
/// orders <= max_order, numerator degree <= max_num_degree.
inline RatFunc random_ratfunc(Engine& g, int max_poles = 2, int max_order = 2, int max_num_degree = 3) {
  RatFunc f(random_poly(g, max_num_degree));
  int poles = static_cast<int>(uniform(g, 0, max_poles));
  for (int k = 0; k < poles; ++k) {
    PointP1 x = random_finite_point(g);
    int order = static_cast<int>(uniform(g, 1, max_order));
    PolarCoeffs c;
    for (int i = 0; i < order; ++i) c.push_back(small_rational(g, 3, 2));
    f += polar_to_ratfunc(PolarPart{x, c});
  }
  return f;
}

inline RatHom random_hom(Engine& g, const SplitBundle& src, const SplitBundle& tgt, int max_poles = 2, int max_order = 2) {
  RatHom h = RatHom::zero(src, tgt);
  for (std::size_t i = 0; i < tgt.rank(); ++i)
    for (std::size_t j = 0; j < src.rank(); ++j) h(i, j) = random_ratfunc(g, max_poles, max_order, 2);
  return h;
}

/// Random matrix of polar tails at the given points.
inline PrinHom random_prin(Engine& g, const SplitBundle& src, const SplitBundle& tgt, const std::vector<PointP1>& points,
                           int max_order = 2, bool symmetric = false) {
  PrinHom p = PrinHom::zero(src, tgt);
  for (const auto& x : points) {
    for (std::size_t i = 0; i < tgt.rank(); ++i)
      for (std::size_t j = 0; j < src.rank(); ++j) {
        if (symmetric && j < i) continue;
        PolarCoeffs c;
        int order = static_cast<int>(uniform(g, 0, max_order));
        for (int k = 0; k < order; ++k) c.push_back(small_rational(g, 3, 2));
        trim(c);
        p.at(x)(i, j) = c;
        if (symmetric) p.at(x)(j, i) = c;
      }
  }
  p.prune();
  return p;
}

}  // namespace symext::testing

namespace symext::testing {

/// c * z^k with k in [lo, hi], possibly zero.
inline RatFunc random_laurent(Engine& g, int lo = -2, int hi = 2, int terms = 2) {
  RatFunc f;
  for (int t = 0; t < terms; ++t) f += RatFunc(small_rational(g, 3, 2)) * RatFunc::z_pow(static_cast<int>(uniform(g, lo, hi)));
  return f;
}

inline SplitBundle random_bundle(Engine& g, int max_rank = 3, int lo = -3, int hi = 3) {
  std::vector<int> d(static_cast<std::size_t>(uniform(g, 1, max_rank)));
  for (auto& x : d) x = static_cast<int>(uniform(g, lo, hi));
  return SplitBundle(std::move(d));
}

/// diag(z^d) times a random unipotent upper-triangular Laurent matrix, so the
/// transition has a Laurent inverse.
inline Matrix<RatFunc> random_transition(Engine& g, const SplitBundle& e) {
  const std::size_t n = e.rank();
  Matrix<RatFunc> u = Matrix<RatFunc>::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) u(i, j) = random_laurent(g, -2, 2, 1);
  Matrix<RatFunc> d = Matrix<RatFunc>::zero(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = RatFunc::z_pow(e[i]);
  return d * u;
}

}  // namespace symext::testing

namespace symext::testing {

/// Principal part with transpose(p) = sign * p (diagonal zero when sign < 0).
inline PrinHom random_prin_signed(Engine& g, const SplitBundle& src, const SplitBundle& tgt,
                                  const std::vector<PointP1>& points, int max_order, int sign) {
  PrinHom p = PrinHom::zero(src, tgt);
  for (const auto& x : points)
    for (std::size_t i = 0; i < tgt.rank(); ++i)
      for (std::size_t j = i; j < src.rank(); ++j) {
        if (sign < 0 && i == j) continue;
        PolarCoeffs c;
        int order = static_cast<int>(uniform(g, 0, max_order));
        for (int k = 0; k < order; ++k) c.push_back(small_rational(g, 3, 2));
        trim(c);
        p.at(x)(i, j) = c;
        for (auto& v : c) v *= sign;
        p.at(x)(j, i) = c;
      }
  p.prune();
  return p;
}

/// A few finite points, optionally with Infinity.
inline std::vector<PointP1> random_support(Engine& g, int max_finite = 2, bool with_inf = true) {
  std::vector<PointP1> pts;
  int n = static_cast<int>(uniform(g, 1, max_finite));
  for (int k = 0; k < n; ++k) {
    PointP1 x = random_finite_point(g);
    if (std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
  }
  if (with_inf) pts.push_back(PointP1::infinity());
  return pts;
}

/// p = (signed principal part) + prin_of(beta) for random rational beta, so
/// transpose(p) - sign * p is a coboundary while p itself is usually not
/// (anti)symmetric.
inline ExtensionData random_structured_ext(Engine& g, const SplitBundle& e, LineTwist l, int sign, int max_poles = 2) {
  SplitBundle f = dual_twisted(e, l);
  PrinHom p = random_prin_signed(g, f, e, random_support(g), 2, sign) + prin_of(random_hom(g, f, e, max_poles, 2));
  return ExtensionData(e, l, p);
}

/// Rational map F -> E with poles only at the given points (order <= 2) plus
/// a polynomial part.
inline RatHom random_beta(Engine& g, const SplitBundle& f, const SplitBundle& e, const std::vector<PointP1>& poles) {
  RatHom b = RatHom::zero(f, e);
  for (std::size_t i = 0; i < e.rank(); ++i)
    for (std::size_t j = 0; j < f.rank(); ++j) {
      RatFunc v(random_poly(g, 1, 3));
      for (const auto& x : poles) {
        PolarCoeffs c;
        for (int k = 0, ord = static_cast<int>(uniform(g, 0, 2)); k < ord; ++k) c.push_back(small_rational(g, 3, 2));
        v += polar_to_ratfunc(PolarPart{x, c});
      }
      b(i, j) = v;
    }
  return b;
}

inline std::vector<PointP1> random_finite_points(Engine& g, int max_count) {
  std::vector<PointP1> pts;
  for (int k = 0, n = static_cast<int>(uniform(g, 0, max_count)); k < n; ++k) {
    PointP1 x = random_finite_point(g);
    if (std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
  }
  return pts;
}

/// Random Laurent cochain on U_inf, carried to U_0 by the transition relation.
inline Cochain valid_cochain(Engine& g, const TransitionData& td, CochainDirection dir) {
  const std::size_t n = td.e.rows();
  Cochain c{Matrix<RatFunc>(n, n), Matrix<RatFunc>(n, n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c.on_inf(i, j) = random_laurent(g);
  Matrix<RatFunc> h = td.dual_transition();
  if (dir == CochainDirection::ToDual)
    c.on_0 = h * c.on_inf * inverse(td.e);
  else
    c.on_0 = td.e * c.on_inf * inverse(h);
  return c;
}

/// Random element of the span of the given sections with rational coefficients.
inline RatSectionW random_combination(Engine& g, const std::vector<RatSectionW>& basis, std::size_t n) {
  RatSectionW s{std::vector<RatFunc>(n), std::vector<RatFunc>(n), true};
  for (const auto& b : basis) {
    RatFunc c(small_rational(g, 3, 2));
    for (std::size_t i = 0; i < n; ++i) {
      s.e[i] += c * b.e[i];
      s.phi[i] += c * b.phi[i];
    }
  }
  return s;
}

}  // namespace symext::testing

namespace symext {

// gtest printers
inline void PrintTo(const RatFunc& f, std::ostream* os) { *os << to_string(f); }
inline void PrintTo(const Rational& r, std::ostream* os) { *os << to_string(r); }
inline void PrintTo(const SplitBundle& b, std::ostream* os) { *os << to_string(b); }

}  // namespace symext
