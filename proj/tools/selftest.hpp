#pragma once

// Quick invariant sweep for the selftest subcommand. Seeded and exact; the
// full property suites live under tests/.

#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "symext/symext.hpp"

namespace symext::selftest {

using Engine = std::mt19937_64;

inline long draw(Engine& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

inline Rational coefficient(Engine& g) { return make_rational(draw(g, -3, 3), draw(g, 1, 2)); }

inline PointP1 point(Engine& g) {
  static const long nums[] = {0, 1, -1, 2, 1};
  static const long dens[] = {1, 1, 1, 1, 2};
  long k = draw(g, 0, 5);
  if (k == 5) return PointP1::infinity();
  return PointP1::finite(make_rational(nums[k], dens[k]));
}

/// Polar tails of order <= 2 at two random points; sign != 0 forces
/// transpose(p) = sign * p.
inline PrinHom prin(Engine& g, const SplitBundle& src, const SplitBundle& tgt, int sign = 0) {
  PrinHom p = PrinHom::zero(src, tgt);
  for (int k = 0; k < 2; ++k) {
    PointP1 x = point(g);
    for (std::size_t i = 0; i < tgt.rank(); ++i)
      for (std::size_t j = sign ? i : 0; j < src.rank(); ++j) {
        if (sign < 0 && i == j) continue;
        PolarCoeffs c;
        for (long o = draw(g, 0, 2); o > 0; --o) c.push_back(coefficient(g));
        trim(c);
        p.at(x)(i, j) = c;
        if (sign) {
          for (auto& v : c) v *= sign;
          p.at(x)(j, i) = c;
        }
      }
  }
  p.prune();
  return p;
}

inline RatHom hom(Engine& g, const SplitBundle& src, const SplitBundle& tgt) {
  RatHom h = RatHom::zero(src, tgt);
  for (std::size_t i = 0; i < tgt.rank(); ++i)
    for (std::size_t j = 0; j < src.rank(); ++j) {
      RatFunc f(Poly({coefficient(g), coefficient(g)}));
      PointP1 x = point(g);
      if (!x.is_infinity()) f += polar_to_ratfunc(PolarPart{x, {coefficient(g), coefficient(g)}});
      h(i, j) = f;
    }
  return h;
}

struct Check {
  std::string name;
  std::function<bool()> run;
};

inline std::vector<Check> checks() {
  const SplitBundle e({-1, -1});
  const SplitBundle f = dual_twisted(e, {0});
  return {
      {"h1 dimensions",
       [] {
         for (int d = -6; d <= 2; ++d) {
           SplitBundle src({0}), tgt({d});
           std::vector<std::vector<Rational>> cols;
           for (const auto& x : {PointP1::finite(Rational(0)), PointP1::finite(Rational(1)), PointP1::infinity()})
             for (int k = 1; k <= 8; ++k) {
               PrinHom p = PrinHom::zero(src, tgt);
               PolarCoeffs c(static_cast<std::size_t>(k), Rational(0));
               c.back() = 1;
               p.set(x, 0, 0, c);
               cols.push_back(reduce_class(p).flattened());
             }
           std::size_t r = 0;
           if (!cols[0].empty()) {
             Matrix<Rational> m(cols[0].size(), cols.size());
             for (std::size_t c = 0; c < cols.size(); ++c)
               for (std::size_t i = 0; i < cols[c].size(); ++i) m(i, c) = cols[c][i];
             r = rank(m);
           }
           if (static_cast<int>(r) != h1_line(d)) return false;
         }
         return true;
       }},
      {"symplectic criterion",
       [e, f] {
         Engine g(101);
         for (int t = 0; t < 20; ++t) {
           ExtensionData ext(e, {0}, prin(g, f, e, 1) + prin_of(hom(g, f, e)));
           auto a = check_symplectic(ext);
           if (!a || !(prin_of(*a) == transpose_prin(ext.p) - ext.p)) return false;
         }
         return true;
       }},
      {"graph round trip",
       [e, f] {
         Engine g(102);
         for (int t = 0; t < 20; ++t) {
           RatHom beta = hom(g, f, e);
           GraphSubbundle s = graph_subbundle(prin(g, f, e), beta);
           if (!(beta_from_subbundle(s.lifted(false), s.lifted(true), e, f) == beta)) return false;
           int sum = 0;
           for (int v : s.splitting) sum += v;
           if (sum != s.degree || s.degree != f.degree() - prin_length(s.q)) return false;
         }
         return true;
       }},
      {"regularity",
       [e, f] {
         Engine g(103);
         for (int t = 0; t < 20; ++t) {
           RatHom beta = hom(g, f, e);
           PrinHom p = prin(g, f, e) + prin_of(hom(g, f, e));
           GraphSubbundle s = graph_subbundle(p, beta);
           if (!regularity_check(s) || !subbundle_spot_check(s)) return false;
         }
         return true;
       }},
      {"isotropy agreement",
       [e, f] {
         Engine g(104);
         for (int t = 0; t < 20; ++t) {
           auto se = make_symplectic(ExtensionData(e, {0}, prin(g, f, e, 1) + prin_of(hom(g, f, e))));
           if (!se) return false;
           RatHom beta = hom(g, f, e);
           if (t % 2 == 0) beta = RatFunc(make_rational(1, 2)) * (beta + transpose_hom(beta) - se->alpha);
           GraphSubbundle s = graph_subbundle(se->ext, beta);
           bool a = isotropy_prin(s.q, FormKind::Symplectic);
           if (a != isotropy_linear(beta, se->alpha, FormKind::Symplectic) || a != isotropy_direct(*se, s)) return false;
           if (t % 2 == 0 && !a) return false;
         }
         return true;
       }},
      {"elementary transformation bijection",
       [e, f] {
         Engine g(105);
         for (int t = 0; t < 20; ++t) {
           PrinHom p = prin(g, f, e);
           PrinHom qq = p - prin_of(hom(g, f, e));
           GraphSubbundle s = cor6_forward(p, qq);
           if (!(cor6_backward(p, s) == qq)) return false;
         }
         return true;
       }},
  };
}

/// Prints one line per check; true iff all pass.
inline bool run(std::ostream& out) {
  bool ok = true;
  for (const auto& c : checks()) {
    bool pass = false;
    try {
      pass = c.run();
    } catch (const Error& err) {
      out << "  error: " << err.what() << "\n";
    }
    out << (pass ? "PASS " : "FAIL ") << c.name << "\n";
    ok = ok && pass;
  }
  return ok;
}

}  // namespace symext::selftest
