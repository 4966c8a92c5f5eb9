#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "local.hpp"
#include "matrix.hpp"

namespace symext {

/// A vector bundle on the projective line written as a sum of line bundles
/// O(d_1) + ... + O(d_r). The degrees are kept in frame order (the order of
/// the basis used by matrices acting on the bundle); canonical() is the
/// splitting type sorted descending.
struct SplitBundle {
  std::vector<int> degrees;

  SplitBundle() = default;
  explicit SplitBundle(std::vector<int> d) : degrees(std::move(d)) {
    if (degrees.empty()) fail(ErrorCode::FrameMismatch, "a bundle needs rank >= 1");
  }

  std::size_t rank() const { return degrees.size(); }
  int degree() const { return std::accumulate(degrees.begin(), degrees.end(), 0); }
  int max_degree() const { return *std::max_element(degrees.begin(), degrees.end()); }
  int operator[](std::size_t i) const { return degrees[i]; }

  SplitBundle canonical() const {
    SplitBundle c = *this;
    std::sort(c.degrees.begin(), c.degrees.end(), std::greater<>());
    return c;
  }
  /// Tensor with O(k).
  SplitBundle twisted(int k) const {
    SplitBundle c = *this;
    for (auto& d : c.degrees) d += k;
    return c;
  }

  friend bool operator==(const SplitBundle&, const SplitBundle&) = default;
};

inline std::string to_string(const SplitBundle& b) {
  std::string s = "(";
  for (std::size_t i = 0; i < b.rank(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
  return s + ")";
}

/// Degree of the line bundle L in which forms take values.
struct LineTwist {
  int ell = 0;
  friend bool operator==(const LineTwist&, const LineTwist&) = default;
};

/// Hom(F, E) as a canonical splitting type: degrees d_i - e_j.
inline SplitBundle hom_bundle(const SplitBundle& source, const SplitBundle& target) {
  std::vector<int> d;
  for (int ti : target.degrees)
    for (int sj : source.degrees) d.push_back(ti - sj);
  return SplitBundle(std::move(d)).canonical();
}

/// Hom(E, L) in the frame dual to E's frame: degree ell - d_i in slot i.
inline SplitBundle dual_twisted(const SplitBundle& e, LineTwist l) {
  std::vector<int> d;
  for (int di : e.degrees) d.push_back(l.ell - di);
  return SplitBundle(std::move(d));
}

inline int h0_line(int d) { return std::max(0, d + 1); }
inline int h1_line(int d) { return std::max(0, -d - 1); }

inline int h0_hom(const SplitBundle& source, const SplitBundle& target) {
  int sum = 0;
  for (int ti : target.degrees)
    for (int sj : source.degrees) sum += h0_line(ti - sj);
  return sum;
}

/// Rational homomorphism source -> target; entry (i, j) is a rational
/// section of O(target[i] - source[j]) in the U_0 trivialization.
struct RatHom {
  SplitBundle source;
  SplitBundle target;
  Matrix<RatFunc> entries;

  RatHom() = default;
  RatHom(SplitBundle src, SplitBundle tgt, Matrix<RatFunc> m)
      : source(std::move(src)), target(std::move(tgt)), entries(std::move(m)) {
    if (entries.rows() != target.rank() || entries.cols() != source.rank())
      fail(ErrorCode::FrameMismatch, "matrix shape does not match the frame");
  }
  static RatHom zero(const SplitBundle& src, const SplitBundle& tgt) {
    return RatHom(src, tgt, Matrix<RatFunc>::zero(tgt.rank(), src.rank()));
  }

  int twist(std::size_t i, std::size_t j) const { return target[i] - source[j]; }
  const RatFunc& operator()(std::size_t i, std::size_t j) const { return entries(i, j); }
  RatFunc& operator()(std::size_t i, std::size_t j) { return entries(i, j); }

  std::vector<RatFunc> apply(const std::vector<RatFunc>& v) const { return entries * v; }

  friend bool operator==(const RatHom&, const RatHom&) = default;
  friend RatHom operator+(const RatHom& a, const RatHom& b) {
    check_frames(a, b);
    return RatHom(a.source, a.target, a.entries + b.entries);
  }
  friend RatHom operator-(const RatHom& a, const RatHom& b) {
    check_frames(a, b);
    return RatHom(a.source, a.target, a.entries - b.entries);
  }
  friend RatHom operator-(const RatHom& a) { return RatHom(a.source, a.target, -a.entries); }
  friend RatHom operator*(const RatFunc& c, const RatHom& a) { return RatHom(a.source, a.target, c * a.entries); }

  static void check_frames(const RatHom& a, const RatHom& b) {
    if (!(a.source == b.source) || !(a.target == b.target)) fail(ErrorCode::FrameMismatch, "homomorphism frames differ");
  }
};

/// Every entry has no finite poles and degree <= its twist.
inline bool is_global(const RatHom& h) {
  for (std::size_t i = 0; i < h.entries.rows(); ++i)
    for (std::size_t j = 0; j < h.entries.cols(); ++j)
      if (!is_global_section(h(i, j), h.twist(i, j))) return false;
  return true;
}

/// Frames for which matrix transposition preserves the twist pattern:
/// square, with target[i] + source[i] independent of i. This is exactly the
/// case E -> Hom(E, L) or Hom(E, L) -> E in dual frames.
inline bool is_self_dual_frame(const SplitBundle& source, const SplitBundle& target) {
  if (source.rank() != target.rank()) return false;
  for (std::size_t i = 1; i < source.rank(); ++i)
    if (target[i] + source[i] != target[0] + source[0]) return false;
  return true;
}

inline RatHom transpose_hom(const RatHom& h) {
  if (!is_self_dual_frame(h.source, h.target))
    fail(ErrorCode::FrameMismatch, "transpose needs a self-dual frame, got " + to_string(h.source) + " -> " + to_string(h.target));
  return RatHom(h.source, h.target, h.entries.transposed());
}

inline RatHom symmetric_part(const RatHom& h) { return RatFunc(make_rational(1, 2)) * (h + transpose_hom(h)); }
inline RatHom antisymmetric_part(const RatHom& h) { return RatFunc(make_rational(1, 2)) * (h - transpose_hom(h)); }

/// Transition functions over U_0 ∩ U_inf for the standard two-chart cover:
/// local frames satisfy s_0 = e * s_inf for E and s_0 = l * s_inf for L.
/// delta is the off-diagonal block of an extension of Hom(E, L) by E.
struct TransitionData {
  Matrix<RatFunc> e;
  RatFunc l;
  Matrix<RatFunc> delta;

  /// Transition of Hom(E, L): transpose(e)^-1 * l.
  Matrix<RatFunc> dual_transition() const { return l * inverse(e.transposed()); }

  /// The 2n x 2n transition of W = [[e, delta], [0, transpose(e)^-1 l]].
  Matrix<RatFunc> w() const {
    const std::size_t n = e.rows();
    Matrix<RatFunc> m = Matrix<RatFunc>::zero(2 * n, 2 * n);
    m.set_block(0, 0, e);
    m.set_block(0, n, delta);
    m.set_block(n, n, dual_transition());
    return m;
  }
};

/// Split transitions: e = diag(z^d_i), l = z^ell, delta = 0.
inline TransitionData split_transition(const SplitBundle& e, LineTwist l) {
  const std::size_t n = e.rank();
  TransitionData td{Matrix<RatFunc>::zero(n, n), RatFunc::z_pow(l.ell), Matrix<RatFunc>::zero(n, n)};
  for (std::size_t i = 0; i < n; ++i) td.e(i, i) = RatFunc::z_pow(e[i]);
  return td;
}

/// A cochain of local matrices of a bundle map on the two charts.
struct Cochain {
  Matrix<RatFunc> on_0;
  Matrix<RatFunc> on_inf;
};

enum class CochainDirection {
  ToDual,    // E -> Hom(E, L)
  FromDual,  // Hom(E, L) -> E
};

/// Compatibility of local matrices with the transitions:
///   ToDual:   a_0 e = (transpose(e)^-1 l) a_inf
///   FromDual: a_0 (transpose(e)^-1 l) = e a_inf
inline bool satisfies_cochain_relation(const Cochain& c, const TransitionData& td, CochainDirection dir) {
  const std::size_t n = td.e.rows();
  for (const auto* m : {&c.on_0, &c.on_inf})
    if (m->rows() != n || m->cols() != n) fail(ErrorCode::FrameMismatch, "cochain shape does not match transitions");
  Matrix<RatFunc> h = td.dual_transition();
  if (dir == CochainDirection::ToDual) return c.on_0 * td.e == h * c.on_inf;
  return c.on_0 * h == td.e * c.on_inf;
}

/// Checks that the transposed cochain is again a cochain for the same map
/// type. Throws NotACochain if the input itself is not one.
inline bool cocycle_transpose_check(const Cochain& c, const TransitionData& td,
                                    CochainDirection dir = CochainDirection::ToDual) {
  if (!satisfies_cochain_relation(c, td, dir)) fail(ErrorCode::NotACochain, "input cochain fails the transition relation");
  Cochain t{c.on_0.transposed(), c.on_inf.transposed()};
  return satisfies_cochain_relation(t, td, dir);
}

}  // namespace symext
