#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prinpart.hpp"

namespace symext {

enum class FormKind { Symplectic, Orthogonal };

inline std::string to_string(FormKind k) { return k == FormKind::Symplectic ? "symplectic" : "orthogonal"; }

inline FormKind parse_kind(const std::string& s) {
  if (s == "symplectic") return FormKind::Symplectic;
  if (s == "orthogonal") return FormKind::Orthogonal;
  fail(ErrorCode::ParseError, "unknown form kind '" + s + "'");
}

/// -1 for antisymmetric forms, +1 for symmetric ones: transpose(Theta) = sign * Theta.
inline int form_sign(FormKind k) { return k == FormKind::Symplectic ? -1 : 1; }

/// The extension 0 -> E -> W_p -> Hom(E, L) -> 0 given by a principal part p
/// with values in Hom(Hom(E, L), E). Hom(E, L) is taken in the dual frame.
struct ExtensionData {
  SplitBundle E;
  LineTwist L;
  PrinHom p;

  ExtensionData() = default;
  ExtensionData(SplitBundle e, LineTwist l, PrinHom prin) : E(std::move(e)), L(l), p(std::move(prin)) {
    if (!(p.source == F()) || !(p.target == E))
      fail(ErrorCode::FrameMismatch, "p must map " + to_string(F()) + " -> " + to_string(E) + ", got " +
                                         to_string(p.source) + " -> " + to_string(p.target));
  }
  static ExtensionData split(const SplitBundle& e, LineTwist l) {
    return ExtensionData(e, l, PrinHom::zero(dual_twisted(e, l), e));
  }

  SplitBundle F() const { return dual_twisted(E, L); }
  std::size_t rank() const { return E.rank(); }
};

struct SymplecticExtension {
  ExtensionData ext;
  RatHom alpha;  // antisymmetric, prin_of(alpha) = transpose(p) - p
};

struct OrthogonalExtension {
  ExtensionData ext;
  RatHom alpha;  // symmetric, prin_of(alpha) = transpose(p) + p
};

namespace detail {

inline std::optional<RatHom> structure_alpha(const ExtensionData& ext, int sign) {
  PrinHom s = combine(transpose_prin(ext.p), ext.p, Rational(sign));
  if (!is_coboundary(s)) return std::nullopt;
  RatHom a0 = lift_rational(s);
  RatHom alpha = RatFunc(make_rational(1, 2)) * (sign < 0 ? a0 - transpose_hom(a0) : a0 + transpose_hom(a0));
  if (!(prin_of(alpha) == s)) fail(ErrorCode::InternalLiftFailure, "the (anti)symmetrized lift lost the principal part");
  return alpha;
}

inline RatFunc pairing(const std::vector<RatFunc>& phi, const std::vector<RatFunc>& e) {
  if (phi.size() != e.size()) fail(ErrorCode::FrameMismatch, "pairing of sections of different ranks");
  RatFunc r;
  for (std::size_t i = 0; i < e.size(); ++i) r += phi[i] * e[i];
  return r;
}

}  // namespace detail

/// Symplectic structure on W_p with E Lagrangian for this representative:
/// alpha with prin_of(alpha) = transpose(p) - p, or nothing when that
/// principal part has a nonzero class.
inline std::optional<RatHom> check_symplectic(const ExtensionData& ext) { return detail::structure_alpha(ext, -1); }

inline std::optional<RatHom> check_orthogonal(const ExtensionData& ext) { return detail::structure_alpha(ext, 1); }

inline std::optional<SymplecticExtension> make_symplectic(const ExtensionData& ext) {
  auto a = check_symplectic(ext);
  if (!a) return std::nullopt;
  return SymplecticExtension{ext, *a};
}

inline std::optional<OrthogonalExtension> make_orthogonal(const ExtensionData& ext) {
  auto a = check_orthogonal(ext);
  if (!a) return std::nullopt;
  return OrthogonalExtension{ext, *a};
}

/// A pair of rational sections (e, phi) of E(shift) and Hom(E, L)(shift).
struct RatSectionW {
  std::vector<RatFunc> e;
  std::vector<RatFunc> phi;
  bool regular_flag = false;
};

/// (e, phi) lies in W_p(shift): phi is a global section of Hom(E, L)(shift)
/// and the principal part of e is exactly p(phi).
inline bool membership_Wp(const ExtensionData& ext, const std::vector<RatFunc>& e, const std::vector<RatFunc>& phi,
                          int shift = 0) {
  const std::size_t n = ext.rank();
  if (e.size() != n || phi.size() != n) fail(ErrorCode::FrameMismatch, "section rank does not match the extension");
  SplitBundle f = ext.F();
  for (std::size_t j = 0; j < n; ++j)
    if (!is_global_section(phi[j], f[j] + shift)) return false;
  RatHom column = RatHom::zero(SplitBundle({0}), ext.E.twisted(shift));
  for (std::size_t i = 0; i < n; ++i) column(i, 0) = e[i];
  return prin_of(column) == apply_prin(ext.p, phi, shift);
}

inline RatSectionW make_section(const ExtensionData& ext, std::vector<RatFunc> e, std::vector<RatFunc> phi, int shift = 0) {
  bool ok = membership_Wp(ext, e, phi, shift);
  return RatSectionW{std::move(e), std::move(phi), ok};
}

/// Basis of H^0(W_p(shift)): lifts of the sections of Hom(E, L)(shift) whose
/// obstruction class vanishes, followed by the sections of E(shift).
inline std::vector<RatSectionW> global_sections(const ExtensionData& ext, int shift = 0) {
  const std::size_t n = ext.rank();
  SplitBundle f = ext.F();
  std::vector<std::vector<RatFunc>> basis;
  for (std::size_t j = 0; j < n; ++j)
    for (int k = 0; k <= f[j] + shift; ++k) {
      std::vector<RatFunc> phi(n);
      phi[j] = RatFunc::z_pow(k);
      basis.push_back(std::move(phi));
    }
  std::vector<RatSectionW> out;
  if (!basis.empty()) {
    std::vector<std::vector<Rational>> cols;
    for (const auto& phi : basis) cols.push_back(reduce_class(apply_prin(ext.p, phi, shift)).flattened());
    Matrix<Rational> m = Matrix<Rational>::zero(cols[0].size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t r = 0; r < cols[c].size(); ++r) m(r, c) = cols[c][r];
    Matrix<Rational> ker = nullspace(m);
    for (std::size_t k = 0; k < ker.cols(); ++k) {
      std::vector<RatFunc> phi(n);
      for (std::size_t b = 0; b < basis.size(); ++b)
        if (!is_zero(ker(b, k)))
          for (std::size_t j = 0; j < n; ++j) phi[j] += RatFunc(ker(b, k)) * basis[b][j];
      RatHom lifted = lift_rational(apply_prin(ext.p, phi, shift));
      std::vector<RatFunc> e(n);
      for (std::size_t i = 0; i < n; ++i) e[i] = lifted(i, 0);
      out.push_back({std::move(e), std::move(phi), true});
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (int k = 0; k <= ext.E[i] + shift; ++k) {
      std::vector<RatFunc> e(n);
      e[i] = RatFunc::z_pow(k);
      out.push_back({std::move(e), std::vector<RatFunc>(n), true});
    }
  return out;
}

namespace detail {

inline RatFunc theta(const RatHom& alpha, int sign, const RatSectionW& s1, const RatSectionW& s2) {
  const std::size_t n = alpha.target.rank();
  for (const auto* s : {&s1, &s2})
    if (s->e.size() != n || s->phi.size() != n) fail(ErrorCode::FrameMismatch, "section rank does not match the form");
  return pairing(s1.phi, s2.e) + RatFunc(sign) * pairing(s2.phi, s1.e) - pairing(s2.phi, alpha.apply(s1.phi));
}

}  // namespace detail

/// phi1(e2) - phi2(e1) - phi2(alpha(phi1)), a rational section of L.
inline RatFunc eval_theta(const SymplecticExtension& se, const RatSectionW& s1, const RatSectionW& s2) {
  return detail::theta(se.alpha, -1, s1, s2);
}

/// phi1(e2) + phi2(e1) - phi2(alpha(phi1)).
inline RatFunc eval_theta_orthogonal(const OrthogonalExtension& oe, const RatSectionW& s1, const RatSectionW& s2) {
  return detail::theta(oe.alpha, 1, s1, s2);
}

/// Gram matrix of the form on the standard rational basis (e_1..e_n, phi_1..phi_n).
inline Matrix<RatFunc> gram_matrix(const RatHom& alpha, FormKind kind) {
  const std::size_t n = alpha.target.rank();
  const int sign = form_sign(kind);
  Matrix<RatFunc> g = Matrix<RatFunc>::zero(2 * n, 2 * n);
  auto unit = [n](std::size_t k, bool in_e) {
    RatSectionW s{std::vector<RatFunc>(n), std::vector<RatFunc>(n), true};
    (in_e ? s.e : s.phi)[k] = RatFunc(1);
    return s;
  };
  for (std::size_t a = 0; a < 2 * n; ++a)
    for (std::size_t b = 0; b < 2 * n; ++b)
      g(a, b) = detail::theta(alpha, sign, unit(a % n, a < n), unit(b % n, b < n));
  return g;
}

inline bool gram_nondegeneracy(const SymplecticExtension& se) {
  return !determinant(gram_matrix(se.alpha, FormKind::Symplectic)).is_zero();
}

inline bool gram_nondegeneracy(const OrthogonalExtension& oe) {
  return !determinant(gram_matrix(oe.alpha, FormKind::Orthogonal)).is_zero();
}

/// Local matrices of a bilinear form on W over the two charts, in the frames
/// glued by `transition`: theta(v, w) = transpose(v) Theta_i w, with values
/// in the chart trivialization of L.
struct FormCochain {
  FormKind kind = FormKind::Symplectic;
  SplitBundle E;
  LineTwist L;
  Matrix<RatFunc> theta_0;
  Matrix<RatFunc> theta_inf;
  TransitionData transition;

  std::size_t rank() const { return E.rank(); }
  /// Block (r, c) in {0, 1}^2 of the given chart's matrix: A = (0,0), B = (0,1), C = (1,1).
  Matrix<RatFunc> block(bool at_inf, int r, int c) const {
    const std::size_t n = rank();
    return (at_inf ? theta_inf : theta_0).block(static_cast<std::size_t>(r) * n, static_cast<std::size_t>(c) * n, n, n);
  }
};

namespace detail {

inline Matrix<RatFunc> diag_z(const SplitBundle& b) {
  Matrix<RatFunc> d = Matrix<RatFunc>::zero(b.rank(), b.rank());
  for (std::size_t i = 0; i < b.rank(); ++i) d(i, i) = RatFunc::z_pow(b[i]);
  return d;
}

inline bool is_monomial(const Poly& p) {
  return !p.is_zero() && p.low_order() == p.degree();
}

inline bool regular_on_u0(const RatFunc& f) { return f.is_polynomial(); }

/// Regular on the chart at Infinity: poles only at 0 and none at Infinity.
inline bool regular_on_uinf(const RatFunc& f) {
  return f.is_zero() || (is_monomial(f.den()) && f.num().degree() <= f.den().degree());
}

}  // namespace detail

/// Transition data of W_c for the representative c of [p] supported at
/// Infinity: delta = P * diag(z^f), where P carries the polar tails of c as
/// negative powers of z.
inline TransitionData class_transition(const ExtensionData& ext) {
  PrinHom c = representative(reduce_class(ext.p));
  SplitBundle f = ext.F();
  TransitionData td = split_transition(ext.E, ext.L);
  Matrix<RatFunc> big_p = Matrix<RatFunc>::zero(ext.rank(), ext.rank());
  for (std::size_t i = 0; i < ext.rank(); ++i)
    for (std::size_t j = 0; j < ext.rank(); ++j)
      big_p(i, j) = polar_to_ratfunc(PolarPart{PointP1::infinity(), c.entry(PointP1::infinity(), i, j)}, c.twist(i, j));
  td.delta = big_p * detail::diag_z(f);
  return td;
}

/// Form cochain of the standard form lambda * theta on W_{g p}, for a global
/// automorphism g of E (identity when absent). The cochain lives in the
/// frames of class_transition for the extension g p; Theta_0 is the standard
/// matrix pulled back along W_c -> W_p, (e, phi) -> (g^-1 (e + gamma phi), phi).
inline FormCochain standard_form_cochain(const ExtensionData& ext, const RatHom& alpha, FormKind kind,
                                         const Rational& lambda = Rational(1), const std::optional<RatHom>& g = std::nullopt) {
  const std::size_t n = ext.rank();
  const int sign = form_sign(kind);
  ExtensionData moved = g ? ExtensionData(ext.E, ext.L, compose_left(*g, ext.p)) : ext;
  PrinHom c = representative(reduce_class(moved.p));
  RatHom gamma = lift_rational(moved.p - c);
  Matrix<RatFunc> g_inv = g ? inverse(g->entries) : Matrix<RatFunc>::identity(n);

  Matrix<RatFunc> t = Matrix<RatFunc>::zero(2 * n, 2 * n);
  t.set_block(0, 0, g_inv);
  t.set_block(0, n, g_inv * gamma.entries);
  t.set_block(n, n, Matrix<RatFunc>::identity(n));

  Matrix<RatFunc> standard = Matrix<RatFunc>::zero(2 * n, 2 * n);
  standard.set_block(0, n, RatFunc(sign) * Matrix<RatFunc>::identity(n));
  standard.set_block(n, 0, Matrix<RatFunc>::identity(n));
  standard.set_block(n, n, -alpha.entries.transposed());
  standard = RatFunc(lambda) * standard;

  FormCochain fc;
  fc.kind = kind;
  fc.E = ext.E;
  fc.L = ext.L;
  fc.transition = class_transition(moved);
  fc.theta_0 = t.transposed() * standard * t;
  Matrix<RatFunc> w = fc.transition.w();
  fc.theta_inf = fc.transition.l.inverse() * (w.transposed() * fc.theta_0 * w);
  return fc;
}

/// The class {transpose(B_0) delta} read off a form cochain, and the
/// automorphism transpose(B_0) of E that relates it to the extension class.
struct ExtractedClass {
  CohClass cls;
  RatHom action;
};

inline ExtractedClass class_from_form(const FormCochain& fc, const TransitionData& td) {
  const std::size_t n = fc.rank();
  const int sign = form_sign(fc.kind);
  if (td.e.rows() != n || !(td.e == detail::diag_z(fc.E)) || !(td.l == RatFunc::z_pow(fc.L.ell)))
    fail(ErrorCode::FrameMismatch, "class extraction needs split transitions for E and L");
  for (const auto* m : {&fc.theta_0, &fc.theta_inf}) {
    if (m->rows() != 2 * n || m->cols() != 2 * n) fail(ErrorCode::FrameMismatch, "form matrix has the wrong size");
    if (!(m->transposed() == RatFunc(sign) * *m))
      fail(ErrorCode::NotAFormCochain, std::string("form matrix is not ") + (sign < 0 ? "antisymmetric" : "symmetric"));
  }
  Matrix<RatFunc> w = td.w();
  if (!(td.l * fc.theta_inf == w.transposed() * fc.theta_0 * w))
    fail(ErrorCode::NotAFormCochain, "local form matrices do not glue across the overlap");
  for (std::size_t a = 0; a < 2 * n; ++a)
    for (std::size_t b = 0; b < 2 * n; ++b) {
      if (!detail::regular_on_u0(fc.theta_0(a, b))) fail(ErrorCode::NotAFormCochain, "Theta_0 has a pole on the finite chart");
      if (!detail::regular_on_uinf(fc.theta_inf(a, b))) fail(ErrorCode::NotAFormCochain, "Theta_inf has a pole on the chart at infinity");
    }
  if (!fc.block(false, 0, 0).is_zero() || !fc.block(true, 0, 0).is_zero())
    fail(ErrorCode::IsotropyViolation, "E is not isotropic for this form");

  Matrix<RatFunc> b0 = fc.block(false, 0, 1);
  RatFunc det = determinant(b0);
  if (det.is_zero() || !detail::is_monomial(det.num()) || !detail::is_monomial(det.den()))
    fail(ErrorCode::DegenerateB, "B is not invertible over the overlap");
  Matrix<RatFunc> te = td.e.transposed();
  if (!(fc.block(true, 0, 1) == te * b0 * inverse(te)))
    fail(ErrorCode::NotAFormCochain, "B does not intertwine the transitions");

  SplitBundle f = dual_twisted(fc.E, fc.L);
  Matrix<RatFunc> x = b0.transposed() * td.delta * inverse(td.dual_transition());
  PrinHom at_inf = PrinHom::zero(f, fc.E);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!x(i, j).is_zero() && !detail::is_monomial(x(i, j).den()))
        fail(ErrorCode::NotAFormCochain, "the extracted cocycle is not regular on the overlap");
      at_inf.at(PointP1::infinity())(i, j) = polar_part(x(i, j), PointP1::infinity(), at_inf.twist(i, j)).coeffs;
    }
  at_inf.prune();
  return {reduce_class(at_inf), RatHom(fc.E, fc.E, b0.transposed())};
}

}  // namespace symext
