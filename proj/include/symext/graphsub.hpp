#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "roots.hpp"
#include "sympext.hpp"

namespace symext {

/// Linear conditions on the jets of a section of F at a point: the section
/// lies in the subsheaf iff matrix * (jet coefficients) = 0. Columns are
/// indexed j * order + r (coefficient of t^r of component j, in the local
/// frame of F at the point).
struct JetCondition {
  PointP1 point;
  int order = 0;
  Matrix<Rational> matrix;
};

/// The graph subbundle of beta: G = Ker(q: F -> Prin(E)) with q = p - prin(beta),
/// embedded in W by f -> (beta f, f). basis_0 spans G over the finite chart
/// (polynomial columns); basis_inf spans G over the chart at Infinity. Both
/// are written in the U_0 trivialization of F.
struct GraphSubbundle {
  SplitBundle source;  // F
  SplitBundle target;  // E
  PrinHom p;
  RatHom beta;
  PrinHom q;
  std::vector<JetCondition> conditions;
  Matrix<RatFunc> basis_0;
  Matrix<RatFunc> basis_inf;
  std::vector<int> splitting;
  int degree = 0;

  std::size_t rank() const { return source.rank(); }

  /// The 2n x n basis (beta T; T) of the subbundle of W on the given chart.
  Matrix<RatFunc> lifted(bool at_inf) const {
    const Matrix<RatFunc>& t = at_inf ? basis_inf : basis_0;
    Matrix<RatFunc> m(target.rank() + source.rank(), t.cols());
    m.set_block(0, 0, beta.entries * t);
    m.set_block(target.rank(), 0, t);
    return m;
  }
};

namespace detail {

inline RatFunc local_parameter_0(const PointP1& x) { return RatFunc(Poly::linear(x.coordinate())); }

/// Local parameter at a point of the chart at Infinity, as a function of z.
inline RatFunc local_parameter_inf(const PointP1& x) {
  if (x.is_infinity()) return RatFunc::z_pow(-1);
  return RatFunc(Poly::linear(x.coordinate())) * RatFunc::z_pow(-1);
}

/// Replaces the columns of t by a basis of {v in span(t) : q(v) regular at x},
/// assuming the columns of t form a local basis of F at x.
inline void saturate_at(const PrinHom& q, const PointP1& x, Matrix<RatFunc>& t, const RatFunc& param) {
  const std::size_t n = t.cols(), m = q.target.rank();
  for (;;) {
    std::vector<std::vector<PolarCoeffs>> tails(n);
    std::size_t top = 0;
    for (std::size_t c = 0; c < n; ++c) {
      tails[c] = apply_polar(q, x, t.column(c));
      for (const auto& tail : tails[c]) top = std::max(top, tail.size());
    }
    if (top == 0) return;
    Matrix<Rational> lead = Matrix<Rational>::zero(m, n);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t i = 0; i < m; ++i)
        if (tails[c][i].size() == top) lead(i, c) = tails[c][i][top - 1];
    auto ech = row_reduce(lead);
    std::vector<bool> pivot(n, false);
    for (auto c : ech.pivots) pivot[c] = true;
    for (std::size_t c = 0; c < n; ++c) {
      if (pivot[c]) continue;
      std::vector<RatFunc> col = t.column(c);
      for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
        const Rational& lambda = ech.reduced(r, c);
        if (is_zero(lambda)) continue;
        std::vector<RatFunc> pc = t.column(ech.pivots[r]);
        for (std::size_t j = 0; j < col.size(); ++j) col[j] -= RatFunc(lambda) * pc[j];
      }
      t.set_column(c, col);
    }
    for (auto c : ech.pivots) {
      std::vector<RatFunc> col = t.column(c);
      for (auto& v : col) v *= param;
      t.set_column(c, col);
    }
  }
}

inline Matrix<RatFunc> diag_powers(const SplitBundle& b, int shift = 0) {
  Matrix<RatFunc> d = Matrix<RatFunc>::zero(b.rank(), b.rank());
  for (std::size_t i = 0; i < b.rank(); ++i) d(i, i) = RatFunc::z_pow(b[i] + shift);
  return d;
}

}  // namespace detail

/// Jet conditions cutting Ker(q) out of the source bundle, one per support
/// point, with redundant rows removed.
inline std::vector<JetCondition> jet_conditions(const PrinHom& q) {
  std::vector<JetCondition> out;
  for (const auto& [x, m] : q.support) {
    Matrix<Rational> jm = jet_map(q, x);
    auto ech = row_reduce(jm);
    const std::size_t r = ech.pivots.size();
    if (r == 0) continue;
    out.push_back({x, q.order_at(x), ech.reduced.block(0, 0, r, jm.cols())});
  }
  return out;
}

/// h^0(G(m)) for G = Ker(q) in F: polynomial vectors with deg f_j <= F[j] + m
/// whose jets satisfy every condition.
inline int h0_kernel_twist(const SplitBundle& f, const std::vector<JetCondition>& conditions, int m) {
  const std::size_t n = f.rank();
  std::vector<std::size_t> offset(n + 1, 0);
  for (std::size_t j = 0; j < n; ++j) offset[j + 1] = offset[j] + static_cast<std::size_t>(h0_line(f[j] + m));
  const std::size_t vars = offset[n];
  if (vars == 0) return 0;
  std::vector<std::vector<Rational>> rows;
  for (const auto& cond : conditions) {
    const std::size_t order = static_cast<std::size_t>(cond.order);
    // jets = jet_of * coefficients
    Matrix<Rational> jet_of = Matrix<Rational>::zero(n * order, vars);
    for (std::size_t j = 0; j < n; ++j) {
      const int top = f[j] + m;
      for (int k = 0; k <= top; ++k)
        for (std::size_t r = 0; r < order; ++r) {
          Rational c(0);
          if (cond.point.is_infinity()) {
            if (k == top - static_cast<int>(r)) c = 1;
          } else if (k >= static_cast<int>(r)) {
            Integer b;
            mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(k), r);
            Rational pw(1);
            for (int e = 0; e < k - static_cast<int>(r); ++e) pw *= cond.point.coordinate();
            c = Rational(b) * pw;
          }
          jet_of(j * order + r, offset[j] + static_cast<std::size_t>(k)) = c;
        }
    }
    Matrix<Rational> block = cond.matrix * jet_of;
    for (std::size_t r = 0; r < block.rows(); ++r) {
      std::vector<Rational> row(vars);
      for (std::size_t c = 0; c < vars; ++c) row[c] = block(r, c);
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) return static_cast<int>(vars);
  Matrix<Rational> all(rows.size(), vars);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < vars; ++c) all(r, c) = rows[r][c];
  return static_cast<int>(vars - rank(all));
}

struct SplittingOptions {
  int window = 0;     // 0: bounds derived from F and the degree
  bool widen = true;  // double the window until the profile stabilizes
  int max_window = 512;
};

/// Splitting type (descending) of Ker(q) in F by inverting the h^0 profile
/// h(m) = sum_i max(0, a_i + m + 1) over a window of twists.
inline std::vector<int> splitting_from_profile(const SplitBundle& f, const std::vector<JetCondition>& conditions, int degree,
                                               SplittingOptions opt = {}) {
  const int n = static_cast<int>(f.rank());
  const int top = f.max_degree();
  int lo, hi;
  if (opt.window > 0) {
    lo = -opt.window;
    hi = opt.window;
  } else {
    // a_max <= max F and a_min >= degree - (n - 1) a_max
    lo = -top;
    hi = std::max(lo, -(degree - (n - 1) * top));
  }
  for (;;) {
    std::vector<int> h;
    for (int m = lo - 1; m <= hi; ++m) h.push_back(h0_kernel_twist(f, conditions, m));
    auto at = [&](int m) { return h[static_cast<std::size_t>(m - lo + 1)]; };
    bool stable = at(lo - 1) == 0 && at(hi) - at(hi - 1) == n;
    if (stable) {
      std::vector<int> a;
      int prev = 0;
      for (int m = lo; m <= hi; ++m) {
        int d = at(m) - at(m - 1);
        for (int k = prev; k < d; ++k) a.push_back(-m);
        prev = d;
      }
      int sum = 0;
      for (int v : a) sum += v;
      if (static_cast<int>(a.size()) == n && sum == degree) return a;
    }
    if (!opt.widen || hi - lo >= 2 * opt.max_window)
      fail(ErrorCode::WindowTooSmall, "h0 profile does not stabilize on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    const int width = hi - lo + 1;
    lo -= width;
    hi += width;
  }
}

inline std::vector<int> splitting_type(const GraphSubbundle& g, SplittingOptions opt = {}) {
  return splitting_from_profile(g.source, g.conditions, g.degree, opt);
}

/// Graph construction for an arbitrary extension class p: F -> Prin(E).
inline GraphSubbundle graph_subbundle(const PrinHom& p, const RatHom& beta, SplittingOptions opt = {}) {
  if (!(beta.source == p.source) || !(beta.target == p.target))
    fail(ErrorCode::FrameMismatch, "beta must map " + to_string(p.source) + " -> " + to_string(p.target));
  GraphSubbundle g;
  g.source = p.source;
  g.target = p.target;
  g.p = p;
  g.beta = beta;
  g.q = p - prin_of(beta);
  g.conditions = jet_conditions(g.q);
  const std::size_t n = p.source.rank();
  g.basis_0 = Matrix<RatFunc>::identity(n);
  g.basis_inf = detail::diag_powers(p.source);
  for (const auto& [x, m] : g.q.support) {
    if (!x.is_infinity()) detail::saturate_at(g.q, x, g.basis_0, detail::local_parameter_0(x));
    if (!(x == PointP1::finite(Rational(0)))) detail::saturate_at(g.q, x, g.basis_inf, detail::local_parameter_inf(x));
  }
  g.degree = p.source.degree() - prin_length(g.q);
  g.splitting = splitting_from_profile(g.source, g.conditions, g.degree, opt);
  return g;
}

inline GraphSubbundle graph_subbundle(const ExtensionData& ext, const RatHom& beta, SplittingOptions opt = {}) {
  return graph_subbundle(ext.p, beta, opt);
}

/// beta with graph equal to the rational span of the lifted lattice bases.
inline RatHom beta_from_subbundle(const Matrix<RatFunc>& lifted_0, const Matrix<RatFunc>& lifted_inf, const SplitBundle& e,
                                  const SplitBundle& f) {
  const std::size_t n = e.rank(), r = f.rank();
  std::optional<Matrix<RatFunc>> found;
  for (const auto* m : {&lifted_0, &lifted_inf}) {
    if (m->rows() != n + r || m->cols() != r) fail(ErrorCode::FrameMismatch, "lattice basis has the wrong shape");
    Matrix<RatFunc> top = m->block(0, 0, n, r), bottom = m->block(n, 0, r, r);
    if (determinant(bottom).is_zero()) fail(ErrorCode::VerticalIntersection, "the lattice meets E in positive generic rank");
    Matrix<RatFunc> beta = top * inverse(bottom);
    if (found && !(*found == beta)) fail(ErrorCode::InvalidLattice, "chart bases span different rational subspaces");
    found = beta;
  }
  return RatHom(f, e, *found);
}

inline RatHom beta_from_subbundle(const Matrix<RatFunc>& lifted_0, const Matrix<RatFunc>& lifted_inf, const ExtensionData& ext) {
  return beta_from_subbundle(lifted_0, lifted_inf, ext.E, ext.F());
}

namespace detail {

inline bool regular_column(const std::vector<RatFunc>& g, const SplitBundle& f, const PointP1& x) {
  for (std::size_t j = 0; j < g.size(); ++j)
    if (!is_regular_at(g[j], x, f[j])) return false;
  return true;
}

inline std::vector<PointP1> relevant_points(const GraphSubbundle& g) {
  std::vector<PointP1> pts;
  for (const auto& [x, m] : g.p.support) pts.push_back(x);
  for (const auto& [x, m] : prin_of(g.beta).support) pts.push_back(x);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

inline const Matrix<RatFunc>& local_basis(const GraphSubbundle& g, const PointP1& x) {
  return x.is_infinity() ? g.basis_inf : g.basis_0;
}

}  // namespace detail

/// beta is regular on G as a map into W_p: at every relevant point x and for
/// every column g of the local basis, g is regular and the polar part of
/// beta(g) is exactly p_x(g), so that (beta g, g) is a local section of W_p.
/// Away from the support of p this says beta(g) is regular.
inline bool regularity_check(const GraphSubbundle& g) {
  for (const auto& x : detail::relevant_points(g)) {
    const Matrix<RatFunc>& t = detail::local_basis(g, x);
    for (std::size_t c = 0; c < t.cols(); ++c) {
      std::vector<RatFunc> col = t.column(c);
      if (!detail::regular_column(col, g.source, x)) return false;
      std::vector<RatFunc> image = g.beta.apply(col);
      std::vector<PolarCoeffs> expected = apply_polar(g.p, x, col);
      for (std::size_t i = 0; i < image.size(); ++i) {
        PolarCoeffs got = polar_part(image[i], x, g.target[i]).coeffs;
        trim(got);
        trim(expected[i]);
        if (!(got == expected[i])) return false;
      }
    }
  }
  return true;
}

/// The literal reading: beta(g) regular at every relevant point for every
/// local basis column g. Fails when beta and p share poles that cancel in q.
inline bool regularity_check_literal(const GraphSubbundle& g) {
  for (const auto& x : detail::relevant_points(g)) {
    const Matrix<RatFunc>& t = detail::local_basis(g, x);
    for (std::size_t c = 0; c < t.cols(); ++c) {
      std::vector<RatFunc> image = g.beta.apply(t.column(c));
      for (std::size_t i = 0; i < image.size(); ++i)
        if (!is_regular_at(image[i], x, g.target[i])) return false;
    }
  }
  return true;
}

namespace detail {

inline Rational value_at(const RatFunc& f, const PointP1& x) {
  if (!x.is_infinity()) return f(x.coordinate());
  if (f.is_zero() || f.num().degree() < f.den().degree()) return Rational(0);
  return f.num().lead() / f.den().lead();
}

}  // namespace detail

/// Local direct-summand check: at each support point of q the lifted basis,
/// written in a local frame of W_p, has full rank in the fiber.
inline bool subbundle_spot_check(const GraphSubbundle& g) {
  const std::size_t n = g.target.rank(), r = g.source.rank();
  for (const auto& x : detail::relevant_points(g)) {
    const Matrix<RatFunc>& t = detail::local_basis(g, x);
    Matrix<RatFunc> carrier = Matrix<RatFunc>::zero(n, r);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < r; ++j) carrier(i, j) = polar_to_ratfunc(PolarPart{x, g.p.entry(x, i, j)}, g.p.twist(i, j));
    Matrix<RatFunc> top = (g.beta.entries - carrier) * t, bottom = t;
    if (x.is_infinity()) {
      top = inverse(detail::diag_powers(g.target)) * top;
      bottom = inverse(detail::diag_powers(g.source)) * bottom;
    }
    Matrix<Rational> fiber(n + r, r);
    for (std::size_t c = 0; c < r; ++c) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!is_regular_at(top(i, c), x)) return false;
        fiber(i, c) = detail::value_at(top(i, c), x);
      }
      for (std::size_t j = 0; j < r; ++j) {
        if (!is_regular_at(bottom(j, c), x)) return false;
        fiber(n + j, c) = detail::value_at(bottom(j, c), x);
      }
    }
    if (rank(fiber) != r) return false;
  }
  return true;
}

/// The hypothesis h^0(Hom(F, E)) = 0 under which principal parts in a class
/// correspond to graph subbundles one to one.
inline bool uniqueness_hypothesis(const PrinHom& p) { return h0_hom(p.source, p.target) == 0; }

/// transpose(q) = q (symplectic) or transpose(q) = -q (orthogonal), exactly.
inline bool isotropy_prin(const PrinHom& q, FormKind kind) {
  PrinHom t = transpose_prin(q);
  return kind == FormKind::Symplectic ? t == q : t == -q;
}

/// transpose(beta) - beta = alpha (symplectic) or transpose(beta) + beta = alpha.
inline bool isotropy_linear(const RatHom& beta, const RatHom& alpha, FormKind kind) {
  RatHom t = transpose_hom(beta);
  return (kind == FormKind::Symplectic ? t - beta : t + beta) == alpha;
}

namespace detail {

template <class Ext, class Eval>
bool isotropy_direct_impl(const Ext& ext, const GraphSubbundle& g, Eval eval) {
  const std::size_t n = g.rank();
  std::vector<RatSectionW> basis;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<RatFunc> f = g.basis_0.column(c);
    basis.push_back({g.beta.apply(f), f, true});
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (!eval(ext, basis[a], basis[b]).is_zero()) return false;
  return true;
}

}  // namespace detail

/// Evaluates the form on the lifted rational basis (beta f_i, f_i) of G.
inline bool isotropy_direct(const SymplecticExtension& se, const GraphSubbundle& g) {
  return detail::isotropy_direct_impl(se, g, eval_theta);
}

inline bool isotropy_direct(const OrthogonalExtension& oe, const GraphSubbundle& g) {
  return detail::isotropy_direct_impl(oe, g, eval_theta_orthogonal);
}

namespace detail {

/// Saturation in Q[z]^n of the span of the (polynomial) columns of v.
inline Matrix<RatFunc> saturate_columns(Matrix<RatFunc> v) {
  const std::size_t n = v.rows(), k = v.cols();
  if (k == 0) return v;
  for (std::size_t c = 0; c < k; ++c) {
    Poly l = Poly::constant(1);
    for (std::size_t i = 0; i < n; ++i)
      if (!v(i, c).is_zero()) l = divmod(l * v(i, c).den(), gcd(l, v(i, c).den())).first;
    std::vector<RatFunc> col = v.column(c);
    for (auto& x : col) x *= RatFunc(l);
    v.set_column(c, col);
  }
  // gcd of the maximal minors
  Poly d;
  std::vector<std::size_t> rows(k);
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  do {
    std::size_t at = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) rows[at++] = i;
    Matrix<RatFunc> minor(k, k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) minor(a, b) = v(rows[a], b);
    d = gcd(d, determinant(minor).num());
  } while (std::prev_permutation(pick.begin(), pick.end()));
  RootSplit split = rational_roots(d);
  if (split.rest.degree() > 0) fail(ErrorCode::UnsupportedPoleField, "kernel saturation needs irrational points");
  for (const auto& [a, mult] : split.roots) {
    for (int step = 0; step < mult; ++step) {
      Matrix<Rational> at_a(n, k);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < k; ++c) at_a(i, c) = v(i, c)(a);
      Matrix<Rational> dep = nullspace(at_a);
      if (dep.cols() == 0) break;
      std::size_t j = k;
      while (j-- > 0 && is_zero(dep(j, 0))) {
      }
      std::vector<RatFunc> col(n);
      for (std::size_t c = 0; c < k; ++c)
        if (!is_zero(dep(c, 0)))
          for (std::size_t i = 0; i < n; ++i) col[i] += RatFunc(dep(c, 0)) * v(i, c);
      RatFunc lin(Poly::linear(a));
      for (auto& x : col) x /= lin;
      v.set_column(j, col);
    }
  }
  return v;
}

}  // namespace detail

/// Ker(beta restricted to G) over the finite chart: generators are sections
/// of G (columns, written in F) with beta(g) = 0, spanning a saturated
/// subsheaf of G. intersection_agrees records that every generator also lies
/// in W_p as a vertical section (0, g), and that the count matches the
/// generic corank of beta.
struct VerticalKernel {
  std::size_t rank = 0;
  Matrix<RatFunc> generators;
  bool intersection_agrees = false;
};

inline VerticalKernel vertical_kernel(const GraphSubbundle& g) {
  const std::size_t r = g.rank();
  Matrix<RatFunc> k = nullspace(g.beta.entries * g.basis_0);
  Matrix<RatFunc> sat = detail::saturate_columns(k);
  VerticalKernel out;
  out.rank = sat.cols();
  out.generators = g.basis_0 * sat;
  bool ok = out.rank == r - rank(g.beta.entries);
  for (std::size_t c = 0; c < out.rank && ok; ++c) {
    std::vector<RatFunc> col = out.generators.column(c);
    for (const auto& f : g.beta.apply(col)) ok = ok && f.is_zero();
    for (const auto& f : col) ok = ok && f.is_polynomial();
    for (const auto& [x, m] : g.p.support) {
      if (x.is_infinity() || !ok) continue;
      for (const auto& tail : apply_polar(g.p, x, col)) ok = ok && tail.empty();
    }
  }
  out.intersection_agrees = ok;
  return out;
}

/// Principal part q in the class of p -> the graph subbundle with q = p - prin(beta).
inline GraphSubbundle cor6_forward(const PrinHom& p, const PrinHom& q, SplittingOptions opt = {}) {
  if (!uniqueness_hypothesis(p)) fail(ErrorCode::HypothesisUnmet, "h0(Hom(F, E)) != 0: beta is not unique");
  if (!(q.source == p.source) || !(q.target == p.target)) fail(ErrorCode::FrameMismatch, "q and p have different frames");
  if (!(reduce_class(q) == reduce_class(p))) fail(ErrorCode::ClassMismatch, "q does not define the class of p");
  return graph_subbundle(p, lift_rational(p - q), opt);
}

inline GraphSubbundle cor6_forward(const ExtensionData& ext, const PrinHom& q, SplittingOptions opt = {}) {
  return cor6_forward(ext.p, q, opt);
}

inline PrinHom cor6_backward(const PrinHom& p, const GraphSubbundle& g) {
  return p - prin_of(beta_from_subbundle(g.lifted(false), g.lifted(true), p.target, p.source));
}

inline PrinHom cor6_backward(const ExtensionData& ext, const GraphSubbundle& g) { return cor6_backward(ext.p, g); }

struct SearchBounds {
  std::vector<PointP1> points;
  int max_order = 1;
  long coeff_range = 1;
  std::size_t cap = 64;
};

struct LagrangianCandidate {
  GraphSubbundle sub;
  bool symmetric_witness = false;  // isotropy_prin
  bool direct_witness = false;     // isotropy_direct
};

namespace detail {

template <class Ext>
std::vector<LagrangianCandidate> search_impl(const Ext& se, FormKind kind, const SearchBounds& bounds) {
  const ExtensionData& ext = se.ext;
  const std::size_t n = ext.rank();
  const SplitBundle f = ext.F();
  struct Slot {
    PointP1 x;
    std::size_t i, j;
    int k;
  };
  std::vector<Slot> slots;
  std::vector<PointP1> pts = bounds.points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  for (const auto& x : pts)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        if (kind == FormKind::Orthogonal && i == j) continue;
        for (int k = 1; k <= bounds.max_order; ++k) slots.push_back({x, i, j, k});
      }
  const int sign = kind == FormKind::Symplectic ? 1 : -1;
  auto build = [&](const std::vector<Rational>& coeffs) {
    PrinHom q = PrinHom::zero(f, ext.E);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (is_zero(coeffs[s])) continue;
      const Slot& sl = slots[s];
      auto& m = q.at(sl.x);
      auto put = [&](std::size_t a, std::size_t b, const Rational& c) {
        auto& v = m(a, b);
        if (v.size() < static_cast<std::size_t>(sl.k)) v.resize(static_cast<std::size_t>(sl.k), Rational(0));
        v[static_cast<std::size_t>(sl.k - 1)] = c;
      };
      put(sl.i, sl.j, coeffs[s]);
      if (sl.i != sl.j) put(sl.j, sl.i, coeffs[s] * sign);
    }
    for (auto& [x, m] : q.support)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) trim(m(a, b));
    q.prune();
    return q;
  };

  std::vector<Rational> target = reduce_class(ext.p).flattened();
  std::vector<LagrangianCandidate> out;
  std::vector<Rational> particular(slots.size(), Rational(0));
  Matrix<Rational> kernel(slots.size(), 0);
  if (!target.empty()) {
    Matrix<Rational> a = Matrix<Rational>::zero(target.size(), slots.size());
    for (std::size_t s = 0; s < slots.size(); ++s) {
      std::vector<Rational> unit(slots.size(), Rational(0));
      unit[s] = 1;
      std::vector<Rational> col = reduce_class(build(unit)).flattened();
      for (std::size_t r = 0; r < col.size(); ++r) a(r, s) = col[r];
    }
    auto sol = solve(a, target);
    if (!sol) return out;
    particular = *sol;
    kernel = nullspace(a);
  } else {
    kernel = Matrix<Rational>::identity(slots.size());
  }

  const std::size_t dim = kernel.cols();
  std::vector<long> digits(dim, -bounds.coeff_range);
  for (;;) {
    if (out.size() >= bounds.cap) break;
    std::vector<Rational> coeffs = particular;
    for (std::size_t d = 0; d < dim; ++d)
      for (std::size_t s = 0; s < slots.size(); ++s) coeffs[s] += Rational(digits[d]) * kernel(s, d);
    PrinHom q = build(coeffs);
    GraphSubbundle g = graph_subbundle(ext.p, lift_rational(ext.p - q));
    out.push_back({g, isotropy_prin(g.q, kind), isotropy_direct(se, g)});
    std::size_t d = 0;
    while (d < dim && digits[d] == bounds.coeff_range) digits[d++] = -bounds.coeff_range;
    if (d == dim) break;
    ++digits[d];
  }
  std::sort(out.begin(), out.end(),
            [](const LagrangianCandidate& a, const LagrangianCandidate& b) { return to_string(a.sub.q) < to_string(b.sub.q); });
  return out;
}

}  // namespace detail

/// Isotropic graph subbundles whose q is (anti)symmetric with poles of
/// order <= max_order at the given points and [q] = [p]. Coordinates on the
/// affine solution space range over integers in [-coeff_range, coeff_range].
inline std::vector<LagrangianCandidate> search_lagrangian(const SymplecticExtension& se, const SearchBounds& bounds) {
  return detail::search_impl(se, FormKind::Symplectic, bounds);
}

inline std::vector<LagrangianCandidate> search_lagrangian(const OrthogonalExtension& oe, const SearchBounds& bounds) {
  return detail::search_impl(oe, FormKind::Orthogonal, bounds);
}

}  // namespace symext
