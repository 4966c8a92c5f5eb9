#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "bundles.hpp"

namespace symext {

namespace detail {

inline PolarCoeffs add_coeffs(const PolarCoeffs& a, const PolarCoeffs& b, const Rational& scale_b) {
  PolarCoeffs r = a;
  if (b.size() > r.size()) r.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += scale_b * b[i];
  trim(r);
  return r;
}

/// Polar part of (regular series g) * (polar tail c): c'_s = sum_r g_r c_(s+r).
inline PolarCoeffs mul_polar(const Laurent& g, const PolarCoeffs& c) {
  PolarCoeffs out(c.size(), Rational(0));
  for (std::size_t s = 1; s <= c.size(); ++s)
    for (std::size_t k = s; k <= c.size(); ++k) out[s - 1] += g.at(static_cast<int>(k - s)) * c[k - 1];
  trim(out);
  return out;
}

}  // namespace detail

/// A principal part with values in Hom(source, target): finitely many points,
/// each carrying a target.rank() x source.rank() matrix of polar tails. At
/// Infinity entry (i, j) is expressed in the U_inf trivialization of
/// O(target[i] - source[j]).
struct PrinHom {
  SplitBundle source;
  SplitBundle target;
  std::map<PointP1, Matrix<PolarCoeffs>> support;

  static PrinHom zero(const SplitBundle& src, const SplitBundle& tgt) { return PrinHom{src, tgt, {}}; }

  int twist(std::size_t i, std::size_t j) const { return target[i] - source[j]; }
  bool is_zero() const { return support.empty(); }

  PolarCoeffs entry(const PointP1& x, std::size_t i, std::size_t j) const {
    auto it = support.find(x);
    return it == support.end() ? PolarCoeffs{} : it->second(i, j);
  }

  Matrix<PolarCoeffs>& at(const PointP1& x) {
    auto it = support.find(x);
    if (it == support.end()) it = support.emplace(x, Matrix<PolarCoeffs>(target.rank(), source.rank())).first;
    return it->second;
  }

  void set(const PointP1& x, std::size_t i, std::size_t j, PolarCoeffs c) {
    trim(c);
    at(x)(i, j) = std::move(c);
    prune();
  }

  /// Highest polar order at x.
  int order_at(const PointP1& x) const {
    auto it = support.find(x);
    if (it == support.end()) return 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < target.rank(); ++i)
      for (std::size_t j = 0; j < source.rank(); ++j) n = std::max(n, it->second(i, j).size());
    return static_cast<int>(n);
  }

  void prune() {
    for (auto it = support.begin(); it != support.end();) {
      if (it->second.is_zero())
        it = support.erase(it);
      else
        ++it;
    }
  }

  friend bool operator==(const PrinHom&, const PrinHom&) = default;

  friend PrinHom combine(const PrinHom& a, const PrinHom& b, const Rational& scale_b) {
    if (!(a.source == b.source) || !(a.target == b.target)) fail(ErrorCode::FrameMismatch, "principal part frames differ");
    PrinHom r = a;
    for (const auto& [x, m] : b.support) {
      auto& dst = r.at(x);
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) dst(i, j) = detail::add_coeffs(dst(i, j), m(i, j), scale_b);
    }
    r.prune();
    return r;
  }
  friend PrinHom operator+(const PrinHom& a, const PrinHom& b) { return combine(a, b, Rational(1)); }
  friend PrinHom operator-(const PrinHom& a, const PrinHom& b) { return combine(a, b, Rational(-1)); }
  friend PrinHom operator*(const Rational& c, const PrinHom& a) { return combine(PrinHom::zero(a.source, a.target), a, c); }
  friend PrinHom operator-(const PrinHom& a) { return Rational(-1) * a; }
};

/// Canonical representative of a class in H^1(Hom(source, target)): entry
/// (i, j) of twist t carries the coefficients of u^-1 .. u^-(-t-1) of a
/// principal part supported at Infinity (empty when t >= -1).
struct CohClass {
  SplitBundle source;
  SplitBundle target;
  Matrix<std::vector<Rational>> coeffs;

  static CohClass zero(const SplitBundle& src, const SplitBundle& tgt) {
    CohClass c{src, tgt, Matrix<std::vector<Rational>>(tgt.rank(), src.rank())};
    for (std::size_t i = 0; i < tgt.rank(); ++i)
      for (std::size_t j = 0; j < src.rank(); ++j)
        c.coeffs(i, j).assign(static_cast<std::size_t>(h1_line(tgt[i] - src[j])), Rational(0));
    return c;
  }

  bool is_zero() const {
    for (std::size_t i = 0; i < coeffs.rows(); ++i)
      for (std::size_t j = 0; j < coeffs.cols(); ++j)
        for (const auto& c : coeffs(i, j))
          if (!symext::is_zero(c)) return false;
    return true;
  }

  /// All coefficients in row-major entry order.
  std::vector<Rational> flattened() const {
    std::vector<Rational> v;
    for (std::size_t i = 0; i < coeffs.rows(); ++i)
      for (std::size_t j = 0; j < coeffs.cols(); ++j) v.insert(v.end(), coeffs(i, j).begin(), coeffs(i, j).end());
    return v;
  }

  friend bool operator==(const CohClass&, const CohClass&) = default;
  friend CohClass operator-(const CohClass& a, const CohClass& b) {
    CohClass r = a;
    for (std::size_t i = 0; i < r.coeffs.rows(); ++i)
      for (std::size_t j = 0; j < r.coeffs.cols(); ++j)
        for (std::size_t k = 0; k < r.coeffs(i, j).size(); ++k) r.coeffs(i, j)[k] -= b.coeffs(i, j)[k];
    return r;
  }
};

/// Entrywise principal part of a rational homomorphism.
inline PrinHom prin_of(const RatHom& beta) {
  PrinHom out = PrinHom::zero(beta.source, beta.target);
  for (std::size_t i = 0; i < beta.target.rank(); ++i)
    for (std::size_t j = 0; j < beta.source.rank(); ++j)
      for (auto& pp : full_principal_part(beta(i, j), beta.twist(i, j))) out.at(pp.point)(i, j) = std::move(pp.coeffs);
  out.prune();
  return out;
}

namespace detail {

/// Rational function carrying exactly the finite polar parts of entry (i, j).
inline RatFunc assemble_finite(const PrinHom& p, std::size_t i, std::size_t j) {
  RatFunc r;
  for (const auto& [x, m] : p.support)
    if (!x.is_infinity()) r += polar_to_ratfunc(PolarPart{x, m(i, j)});
  return r;
}

/// Infinity tail left after removing the finite parts of entry (i, j).
inline PolarCoeffs infinity_residual(const PrinHom& p, std::size_t i, std::size_t j, const RatFunc& finite_part) {
  PolarPart from_finite = polar_part(finite_part, PointP1::infinity(), p.twist(i, j));
  return add_coeffs(p.entry(PointP1::infinity(), i, j), from_finite.coeffs, Rational(-1));
}

}  // namespace detail

/// Image of p in H^1 as its canonical representative.
inline CohClass reduce_class(const PrinHom& p) {
  CohClass out = CohClass::zero(p.source, p.target);
  for (std::size_t i = 0; i < p.target.rank(); ++i)
    for (std::size_t j = 0; j < p.source.rank(); ++j) {
      auto& slot = out.coeffs(i, j);
      if (slot.empty()) continue;
      PolarCoeffs res = detail::infinity_residual(p, i, j, detail::assemble_finite(p, i, j));
      for (std::size_t k = 0; k < slot.size() && k < res.size(); ++k) slot[k] = res[k];
    }
  return out;
}

inline bool is_coboundary(const PrinHom& p) { return reduce_class(p).is_zero(); }

/// The principal part supported at Infinity whose reduction is c.
inline PrinHom representative(const CohClass& c) {
  PrinHom p = PrinHom::zero(c.source, c.target);
  for (std::size_t i = 0; i < c.target.rank(); ++i)
    for (std::size_t j = 0; j < c.source.rank(); ++j) {
      PolarCoeffs v = c.coeffs(i, j);
      trim(v);
      if (!v.empty()) p.at(PointP1::infinity())(i, j) = std::move(v);
    }
  p.prune();
  return p;
}

/// A rational homomorphism whose principal part is exactly p. The finite
/// parts are carried verbatim and the only polynomial added is the one that
/// cancels the Infinity residual, so lift_rational(0) = 0.
inline RatHom lift_rational(const PrinHom& p) {
  RatHom beta = RatHom::zero(p.source, p.target);
  for (std::size_t i = 0; i < p.target.rank(); ++i)
    for (std::size_t j = 0; j < p.source.rank(); ++j) {
      const int t = p.twist(i, j);
      RatFunc r = detail::assemble_finite(p, i, j);
      PolarCoeffs res = detail::infinity_residual(p, i, j, r);
      for (std::size_t k = 1; k <= res.size(); ++k) {
        const Rational& c = res[k - 1];
        if (is_zero(c)) continue;
        if (static_cast<int>(k) < -t) fail(ErrorCode::NotACoboundary, "principal part has a nonzero class");
        r += RatFunc(Poly::monomial(c, static_cast<int>(k) + t));
      }
      beta(i, j) = r;
    }
  return beta;
}

inline PrinHom transpose_prin(const PrinHom& p) {
  if (!is_self_dual_frame(p.source, p.target))
    fail(ErrorCode::FrameMismatch, "transpose needs a self-dual frame, got " + to_string(p.source) + " -> " + to_string(p.target));
  PrinHom t = p;
  for (auto& [x, m] : t.support) m = m.transposed();
  return t;
}

inline CohClass transpose_class(const CohClass& c) {
  if (!is_self_dual_frame(c.source, c.target)) fail(ErrorCode::FrameMismatch, "transpose needs a self-dual frame");
  CohClass t = c;
  t.coeffs = c.coeffs.transposed();
  return t;
}

/// Local expansion of a section of source(shift) at x in the source frame.
inline Laurent local_section(const RatFunc& f, const PointP1& x, int source_degree, int shift, int upto) {
  return expand(f, x, source_degree + shift, upto);
}

/// Polar tails at x of q applied to phi, where phi is a section of
/// source(shift) regular at x. One tail per target component; at Infinity
/// they live in the trivialization of target(shift).
inline std::vector<PolarCoeffs> apply_polar(const PrinHom& q, const PointP1& x, const std::vector<RatFunc>& phi, int shift = 0) {
  std::vector<PolarCoeffs> out(q.target.rank());
  auto it = q.support.find(x);
  if (it == q.support.end()) return out;
  const int n = q.order_at(x);
  for (std::size_t j = 0; j < q.source.rank(); ++j) {
    if (phi[j].is_zero()) continue;
    Laurent s = local_section(phi[j], x, q.source[j], shift, n - 1);
    if (s.start < 0) fail(ErrorCode::FrameMismatch, "section is not regular at " + to_string(x));
    for (std::size_t i = 0; i < q.target.rank(); ++i)
      out[i] = detail::add_coeffs(out[i], detail::mul_polar(s, it->second(i, j)), Rational(1));
  }
  return out;
}

/// q(phi) as a principal part with values in target(shift), i.e. a PrinHom
/// from the trivial line bundle.
inline PrinHom apply_prin(const PrinHom& q, const std::vector<RatFunc>& phi, int shift = 0) {
  PrinHom out = PrinHom::zero(SplitBundle({0}), q.target.twisted(shift));
  for (const auto& [x, m] : q.support) {
    auto tails = apply_polar(q, x, phi, shift);
    for (std::size_t i = 0; i < tails.size(); ++i) out.at(x)(i, 0) = std::move(tails[i]);
  }
  out.prune();
  return out;
}

/// Linear map from truncated jets of a section of the source at x to the
/// polar coefficients of q applied to it. Column (j, r) = j*N + r is the
/// coefficient of u^r of component j; row (i, s) = i*N + s - 1 is the
/// coefficient of u^-s of component i; N = order_at(x).
inline Matrix<Rational> jet_map(const PrinHom& q, const PointP1& x) {
  const std::size_t n = static_cast<std::size_t>(q.order_at(x));
  const std::size_t m_rank = q.target.rank(), f_rank = q.source.rank();
  Matrix<Rational> m = Matrix<Rational>::zero(m_rank * n, f_rank * n);
  if (n == 0) return m;
  const auto& polar = q.support.at(x);
  for (std::size_t i = 0; i < m_rank; ++i)
    for (std::size_t j = 0; j < f_rank; ++j) {
      const auto& c = polar(i, j);
      for (std::size_t s = 1; s <= n; ++s)
        for (std::size_t r = 0; r < n; ++r)
          if (s + r <= c.size()) m(i * n + s - 1, j * n + r) = c[s + r - 1];
    }
  return m;
}

/// Total length of the local conditions q imposes on sections of the source;
/// the colength of Ker(q) in the source bundle.
inline int prin_length(const PrinHom& q) {
  int total = 0;
  for (const auto& [x, m] : q.support) total += static_cast<int>(rank(jet_map(q, x)));
  return total;
}

/// Principal part of g * p for a homomorphism g: target -> target2 regular
/// at every support point of p.
inline PrinHom compose_left(const RatHom& g, const PrinHom& p) {
  if (!(g.source == p.target)) fail(ErrorCode::FrameMismatch, "composition frames differ");
  PrinHom out = PrinHom::zero(p.source, g.target);
  for (const auto& [x, m] : p.support) {
    const int n = p.order_at(x);
    auto& dst = out.at(x);
    for (std::size_t a = 0; a < g.target.rank(); ++a)
      for (std::size_t i = 0; i < g.source.rank(); ++i) {
        if (g(a, i).is_zero()) continue;
        Laurent s = expand(g(a, i), x, g.twist(a, i), n - 1);
        if (s.start < 0) fail(ErrorCode::FrameMismatch, "left factor has a pole at " + to_string(x));
        for (std::size_t j = 0; j < p.source.rank(); ++j)
          dst(a, j) = detail::add_coeffs(dst(a, j), detail::mul_polar(s, m(i, j)), Rational(1));
      }
  }
  out.prune();
  return out;
}

/// Deterministic one-line text: "0: (0,0)=[1, -1/2]; inf: (0,1)=[2]", or "0".
inline std::string to_string(const PrinHom& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [x, m] : p.support) {
    if (!out.empty()) out += "; ";
    out += to_string(x) + ":";
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (m(i, j).empty()) continue;
        out += " (" + std::to_string(i) + "," + std::to_string(j) + ")=[";
        for (std::size_t k = 0; k < m(i, j).size(); ++k) out += (k ? ", " : "") + to_string(m(i, j)[k]);
        out += "]";
      }
  }
  return out;
}

}  // namespace symext
