#include <gtest/gtest.h>

#include "support/random.hpp"

using namespace symext;
using namespace symext::testing;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }
const PointP1 kInf = PointP1::infinity();
PointP1 at(long n, long d = 1) { return PointP1::finite(q(n, d)); }
SplitBundle sb(std::vector<int> d) { return SplitBundle(std::move(d)); }

PrinHom line_prin(int twist, const PointP1& x, PolarCoeffs c) {
  PrinHom p = PrinHom::zero(sb({0}), sb({twist}));
  p.set(x, 0, 0, std::move(c));
  return p;
}

// Rational matrix whose entries carry the polar tails of p at the single
// point x and nothing else; at x it has the same principal part as p.
Matrix<RatFunc> carrier_at(const PrinHom& p, const PointP1& x) {
  Matrix<RatFunc> r = Matrix<RatFunc>::zero(p.target.rank(), p.source.rank());
  for (std::size_t i = 0; i < p.target.rank(); ++i)
    for (std::size_t j = 0; j < p.source.rank(); ++j) r(i, j) = polar_to_ratfunc(PolarPart{x, p.entry(x, i, j)}, p.twist(i, j));
  return r;
}

std::vector<PointP1> random_points(Engine& g, bool with_inf) {
  std::vector<PointP1> pts;
  int n = static_cast<int>(uniform(g, 1, 2));
  for (int k = 0; k < n; ++k) pts.push_back(random_finite_point(g));
  if (with_inf) pts.push_back(kInf);
  return pts;
}

}  // namespace

TEST(ReduceClass, SimplePoleInNegativeTwist) {
  CohClass c = reduce_class(line_prin(-2, at(1), {q(1)}));
  ASSERT_EQ(c.coeffs(0, 0).size(), 1u);
  EXPECT_EQ(c.coeffs(0, 0)[0], -1);
}

TEST(ReduceClass, InfinityKeepsLowCoefficients) {
  CohClass c = reduce_class(line_prin(-3, kInf, {q(2), q(-5, 3), q(7)}));
  EXPECT_EQ(c.coeffs(0, 0), (std::vector<Rational>{q(2), q(-5, 3)}));
}

TEST(ReduceClass, NonnegativeTwistHasNoClass) {
  CohClass c = reduce_class(line_prin(1, at(0), {q(1), q(3)}));
  EXPECT_TRUE(c.coeffs(0, 0).empty());
  EXPECT_TRUE(c.is_zero());
}

TEST(ReduceClass, RankMatchesRiemannRoch) {
  // Principal parts with poles bounded by D span a space of dimension deg D;
  // the kernel of the class map consists of principal parts of sections of
  // O(t + D), so its image has dimension deg D - (h0(t + D) - h0(t)).
  for (int t = -6; t <= 2; ++t) {
    std::vector<std::pair<PointP1, int>> divisor = {{at(0), 3}, {at(1), 2}, {at(-1, 2), 2}, {kInf, 4}};
    int deg = 0;
    std::vector<std::vector<Rational>> images;
    for (const auto& [x, order] : divisor) {
      deg += order;
      for (int k = 1; k <= order; ++k) {
        PolarCoeffs c(static_cast<std::size_t>(k), Rational(0));
        c.back() = 1;
        images.push_back(reduce_class(line_prin(t, x, c)).flattened());
      }
    }
    std::size_t h1 = images.front().size();
    EXPECT_EQ(static_cast<int>(h1), h1_line(t));
    Matrix<Rational> m = Matrix<Rational>::zero(images.size(), h1);
    for (std::size_t r = 0; r < images.size(); ++r)
      for (std::size_t c = 0; c < h1; ++c) m(r, c) = images[r][c];
    int expected = deg - (h0_line(t + deg) - h0_line(t));
    EXPECT_EQ(static_cast<int>(rank(m)), expected) << "t=" << t;
    EXPECT_EQ(expected, h1_line(t));
  }
}

TEST(ReduceClass, CoboundariesVanish) {
  Engine g(31);
  for (int t = 0; t < 80; ++t) {
    SplitBundle f = random_bundle(g), e = random_bundle(g);
    RatHom beta = random_hom(g, f, e, 2, 2);
    EXPECT_TRUE(is_coboundary(prin_of(beta)));
  }
}

TEST(ReduceClass, WellDefinedAndLinear) {
  Engine g(32);
  for (int t = 0; t < 80; ++t) {
    SplitBundle f = random_bundle(g), e = random_bundle(g);
    PrinHom p = random_prin(g, f, e, random_points(g, t % 2 == 0));
    PrinHom r = random_prin(g, f, e, random_points(g, true));
    RatHom beta = random_hom(g, f, e, 2, 2);
    EXPECT_EQ(reduce_class(p + prin_of(beta)), reduce_class(p));
    CohClass sum = reduce_class(p + r);
    CohClass parts = reduce_class(p) - (CohClass::zero(f, e) - reduce_class(r));
    EXPECT_EQ(sum, parts);
    EXPECT_EQ(reduce_class(q(-2, 3) * p), CohClass::zero(f, e) - (reduce_class(q(2, 3) * p)));
  }
}

TEST(ReduceClass, TransposeCommutes) {
  Engine g(33);
  for (int t = 0; t < 60; ++t) {
    SplitBundle e = random_bundle(g);
    SplitBundle f = dual_twisted(e, {static_cast<int>(uniform(g, -3, 1))});
    PrinHom p = random_prin(g, f, e, random_points(g, true));
    EXPECT_EQ(reduce_class(transpose_prin(p)), transpose_class(reduce_class(p)));
  }
}

TEST(LiftRational, RoundTrip) {
  Engine g(34);
  for (int t = 0; t < 80; ++t) {
    SplitBundle f = random_bundle(g), e = random_bundle(g);
    RatHom beta = random_hom(g, f, e, 2, 2);
    PrinHom p = prin_of(beta);
    RatHom lifted = lift_rational(p);
    EXPECT_EQ(prin_of(lifted), p);
    EXPECT_TRUE(is_global(lifted - beta));
  }
  EXPECT_EQ(lift_rational(PrinHom::zero(sb({1, 0}), sb({-2}))), RatHom::zero(sb({1, 0}), sb({-2})));
}

TEST(LiftRational, RejectsNonzeroClass) {
  try {
    lift_rational(line_prin(-2, at(1), {q(1)}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotACoboundary);
  }
}

TEST(PrinLength, Examples) {
  EXPECT_EQ(prin_length(line_prin(0, at(0), {q(1)})), 1);
  EXPECT_EQ(prin_length(line_prin(0, at(0), {q(0), q(1)})), 2);
  EXPECT_EQ(prin_length(PrinHom::zero(sb({0}), sb({0}))), 0);
  // rank one at each of two columns, both killed by the same condition
  PrinHom p = PrinHom::zero(sb({0, 0}), sb({0}));
  p.set(at(2), 0, 0, {q(1)});
  p.set(at(2), 0, 1, {q(3)});
  EXPECT_EQ(prin_length(p), 1);
}

TEST(PrinLength, MatchesSectionCount) {
  // For finite support and a large twist m, sections of F(m) surject onto
  // jets, so the colength equals h0(F(m)) - dim{phi : R phi regular on supp}.
  Engine g(35);
  for (int t = 0; t < 40; ++t) {
    SplitBundle f = random_bundle(g, 2, -1, 1), e = random_bundle(g, 2, -1, 1);
    std::vector<PointP1> pts = random_points(g, false);
    PrinHom p = random_prin(g, f, e, pts, 2);
    Matrix<RatFunc> r = Matrix<RatFunc>::zero(e.rank(), f.rank());
    for (const auto& [x, m] : p.support) r = r + carrier_at(p, x);
    const int twist = 8;
    std::vector<std::vector<RatFunc>> basis;
    for (std::size_t j = 0; j < f.rank(); ++j)
      for (int k = 0; k <= f[j] + twist; ++k) {
        std::vector<RatFunc> phi(f.rank());
        phi[j] = RatFunc::z_pow(k);
        basis.push_back(phi);
      }
    // rows: Taylor-free test via polar parts of R*phi at each support point
    std::vector<std::vector<Rational>> cols;
    for (const auto& phi : basis) {
      std::vector<RatFunc> img = r * phi;
      std::vector<Rational> col;
      for (const auto& [x, m] : p.support)
        for (std::size_t i = 0; i < e.rank(); ++i) {
          PolarCoeffs c = polar_part(img[i], x).coeffs;
          c.resize(4, Rational(0));
          col.insert(col.end(), c.begin(), c.end());
        }
      cols.push_back(col);
    }
    Matrix<Rational> m = Matrix<Rational>::zero(cols.empty() ? 0 : cols[0].size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t k = 0; k < cols[c].size(); ++k) m(k, c) = cols[c][k];
    EXPECT_EQ(prin_length(p), static_cast<int>(rank(m)));
  }
}

TEST(ApplyPolar, AgreesWithRationalProduct) {
  Engine g(36);
  for (int t = 0; t < 80; ++t) {
    SplitBundle f = random_bundle(g, 2), e = random_bundle(g, 2);
    PrinHom p = random_prin(g, f, e, random_points(g, true), 3);
    int shift = static_cast<int>(uniform(g, 0, 3));
    std::vector<RatFunc> phi(f.rank());
    for (std::size_t j = 0; j < f.rank(); ++j) {
      int top = f[j] + shift;
      phi[j] = top >= 0 ? RatFunc(random_poly(g, top)) : RatFunc();
      if (phi[j].num().degree() > top) phi[j] = RatFunc();
    }
    for (const auto& [x, m] : p.support) {
      std::vector<RatFunc> img = carrier_at(p, x) * phi;
      auto tails = apply_polar(p, x, phi, shift);
      for (std::size_t i = 0; i < e.rank(); ++i) EXPECT_EQ(tails[i], polar_part(img[i], x, e[i] + shift).coeffs);
    }
  }
}

TEST(ApplyPolar, RejectsSingularSection) {
  PrinHom p = line_prin(0, at(0), {q(1)});
  EXPECT_THROW(apply_polar(p, at(0), {parse_ratfunc("1/z")}), Error);
}

TEST(JetMap, Example) {
  // c = (c1, c2): row s=1 gives (c1, c2), row s=2 gives (c2, 0).
  Matrix<Rational> m = jet_map(line_prin(0, at(0), {q(2), q(5)}), at(0));
  ASSERT_EQ(m.rows(), 2u);
  EXPECT_EQ(m(0, 0), 2);
  EXPECT_EQ(m(0, 1), 5);
  EXPECT_EQ(m(1, 0), 5);
  EXPECT_EQ(m(1, 1), 0);
}

TEST(ComposeLeft, AgreesWithRationalProduct) {
  Engine g(37);
  for (int t = 0; t < 60; ++t) {
    SplitBundle f = random_bundle(g, 2), e = random_bundle(g, 2), e2 = random_bundle(g, 2);
    PrinHom p = random_prin(g, f, e, random_points(g, true), 2);
    RatHom gmap = RatHom::zero(e, e2);
    for (std::size_t a = 0; a < e2.rank(); ++a)
      for (std::size_t i = 0; i < e.rank(); ++i) {
        int top = e2[a] - e[i];
        gmap(a, i) = top >= 0 ? RatFunc(random_poly(g, top)) : RatFunc();
        if (gmap(a, i).num().degree() > top) gmap(a, i) = RatFunc();
      }
    PrinHom c = compose_left(gmap, p);
    for (const auto& [x, m] : p.support) {
      Matrix<RatFunc> prod = gmap.entries * carrier_at(p, x);
      for (std::size_t a = 0; a < e2.rank(); ++a)
        for (std::size_t j = 0; j < f.rank(); ++j) EXPECT_EQ(c.entry(x, a, j), polar_part(prod(a, j), x, e2[a] - f[j]).coeffs);
    }
  }
}
