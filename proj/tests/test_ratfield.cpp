#include <gtest/gtest.h>

#include "support/random.hpp"

using namespace symext;
using namespace symext::testing;

namespace {

RatFunc rf(const char* s) { return parse_ratfunc(s); }
Rational q(long n, long d = 1) { return make_rational(n, d); }
const PointP1 kInf = PointP1::infinity();
PointP1 at(long n, long d = 1) { return PointP1::finite(q(n, d)); }

// Multiplicity of the root a in p by repeated synthetic division, written
// independently of the library's shift-based expansion.
int synthetic_multiplicity(std::vector<Rational> c, const Rational& a) {
  int m = 0;
  while (c.size() > 1) {
    std::vector<Rational> quot(c.size() - 1);
    Rational carry(0);
    for (std::size_t k = c.size(); k-- > 1;) {
      carry = carry * a + c[k];
      quot[k - 1] = carry;
    }
    Rational rem = carry * a + c[0];
    if (!is_zero(rem)) break;
    c = quot;
    ++m;
  }
  return m;
}

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(to_string(parse_rational("-6/4")), "-3/2");
  EXPECT_EQ(to_string(parse_rational("7")), "7");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("1.5"), Error);
  EXPECT_THROW(parse_rational(""), Error);
}

TEST(Normalize, CancelsCommonFactor) {
  RatFunc f = normalize(parse_poly("z^2 - 1"), parse_poly("z - 1"));
  EXPECT_EQ(f, rf("z + 1"));
  EXPECT_TRUE(f.is_polynomial());
}

TEST(Normalize, ZeroIsZeroOverOne) {
  RatFunc f = normalize(Poly{}, parse_poly("5*z"));
  EXPECT_TRUE(f.is_zero());
  EXPECT_EQ(f.den(), Poly::constant(1));
}

TEST(Normalize, MonicDenominatorScalesNumerator) {
  // (2z, 4): the result must be a cross-multiplication match with a monic
  // denominator of degree 0, i.e. exactly (1/2) z over 1.
  RatFunc f = normalize(parse_poly("2*z"), Poly::constant(4));
  EXPECT_EQ(f.den(), Poly::constant(1));
  EXPECT_EQ(f.num() * Poly::constant(4), parse_poly("2*z") * f.den());
  EXPECT_EQ(f.num().coeff(1), q(1, 2));
  EXPECT_EQ(to_string(f), "1/2*z");
}

TEST(Normalize, ZeroDenominatorThrows) {
  try {
    normalize(Poly::constant(1), Poly{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroDenominator);
  }
}

TEST(Normalize, ArithmeticKeepsInvariants) {
  Engine g(11);
  for (int t = 0; t < 200; ++t) {
    RatFunc a = random_ratfunc(g), b = random_ratfunc(g);
    for (const RatFunc& r : {a + b, a - b, a * b}) {
      EXPECT_EQ(r.den().lead(), 1);
      EXPECT_EQ(gcd(r.num(), r.den()).degree(), 0);
    }
    if (!b.is_zero()) {
      EXPECT_EQ((a / b) * b, a);
    }
    EXPECT_EQ((a + b) - b, a);
  }
}

TEST(Valuation, Examples) {
  EXPECT_EQ(valuation(rf("1/(z*(z-1))"), at(0)), -1);
  EXPECT_EQ(valuation(rf("z^2"), kInf), -2);
  RatFunc f = rf("(z-1)^3/(z+2)");
  EXPECT_EQ(valuation(f, at(1)), 3);
  EXPECT_EQ(synthetic_multiplicity(f.num().coeffs(), q(1)) - synthetic_multiplicity(f.den().coeffs(), q(1)), 3);
  EXPECT_EQ(valuation(f, at(-2)), -1);
  EXPECT_EQ(valuation(f, kInf), -2);
}

TEST(Valuation, ZeroFunctionThrows) {
  try {
    valuation(RatFunc(), at(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroFunction);
  }
}

TEST(Valuation, AgreesWithSyntheticDivision) {
  Engine g(5);
  for (int t = 0; t < 100; ++t) {
    RatFunc f = random_ratfunc(g, 3, 3);
    if (f.is_zero()) continue;
    PointP1 x = random_finite_point(g);
    int expected = synthetic_multiplicity(f.num().coeffs(), x.coordinate()) -
                   synthetic_multiplicity(f.den().coeffs(), x.coordinate());
    EXPECT_EQ(valuation(f, x), expected);
  }
}

TEST(PolarPart, SimplePoleMatchesPartialFractions) {
  // 1/(z(z-1)) = A/z + B/(z-1): A(z-1) + Bz = 1 gives the linear system
  // [[-1, 0], [1, 1]] (A, B) = (1, 0).
  Matrix<Rational> m(2, 2);
  m(0, 0) = -1, m(0, 1) = 0, m(1, 0) = 1, m(1, 1) = 1;
  auto sol = solve(m, {Rational(1), Rational(0)});
  ASSERT_TRUE(sol);
  PolarPart pp = polar_part(rf("1/(z*(z-1))"), at(0));
  ASSERT_EQ(pp.coeffs.size(), 1u);
  EXPECT_EQ(pp.coeffs[0], (*sol)[0]);
  EXPECT_EQ(pp.coeffs[0], -1);
  PolarPart pp1 = polar_part(rf("1/(z*(z-1))"), at(1));
  EXPECT_EQ(pp1.coeffs, PolarCoeffs{(*sol)[1]});
}

TEST(PolarPart, RegularFunctionHasNone) { EXPECT_TRUE(polar_part(rf("z + 3"), at(5)).is_zero()); }

TEST(PolarPart, AtInfinity) {
  // (1/u)^3 / ((1/u) - 1) = u^-2 / (1 - u) = u^-2 + u^-1 + 1 + ...
  PolarPart pp = polar_part(rf("z^3/(z-1)"), kInf);
  EXPECT_EQ(pp.coeffs, (PolarCoeffs{q(1), q(1)}));
}

TEST(PolarPart, HigherOrderMatchesReconstruction) {
  RatFunc f = rf("(z^2 + 1)/((z-2)^3*(z+1))");
  PolarPart pp = polar_part(f, at(2));
  ASSERT_EQ(pp.order(), 3);
  EXPECT_TRUE(is_regular_at(f - polar_to_ratfunc(pp), at(2)));
}

TEST(FullPrincipalPart, Examples) {
  EXPECT_TRUE(full_principal_part(rf("z"), 1).empty());
  auto a = full_principal_part(rf("z"), 0);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_TRUE(a[0].point.is_infinity());
  EXPECT_EQ(a[0].coeffs, PolarCoeffs{q(1)});
  // u^-2 * u/(1-u) = u^-1 (1 + u + ...)
  auto b = full_principal_part(rf("1/(z-1)"), -2);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0].point, at(1));
  EXPECT_EQ(b[0].coeffs, PolarCoeffs{q(1)});
  EXPECT_TRUE(b[1].point.is_infinity());
  EXPECT_EQ(b[1].coeffs, PolarCoeffs{q(1)});
}

TEST(FullPrincipalPart, IrrationalPoleIsRejected) {
  try {
    full_principal_part(rf("1/(z^2 - 2)"), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedPoleField);
  }
  // a rational point is still fine to inspect locally
  EXPECT_TRUE(polar_part(rf("1/(z^2 - 2)"), at(0)).is_zero());
}

TEST(FullPrincipalPart, RationalRootsWithMultiplicity) {
  RatFunc f = rf("1/((3*z - 2)^2 * (z + 7/5) * z^3)");
  auto parts = full_principal_part(f, 0);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0].point, at(-7, 5));
  EXPECT_EQ(parts[1].point, at(0));
  EXPECT_EQ(parts[1].order(), 3);
  EXPECT_EQ(parts[2].point, at(2, 3));
  EXPECT_EQ(parts[2].order(), 2);
}

TEST(RatFieldProperties, RemovingPolarPartLeavesRegular) {
  Engine g(21);
  for (int t = 0; t < 200; ++t) {
    RatFunc f = random_ratfunc(g, 3, 3);
    int d = static_cast<int>(uniform(g, -3, 2));
    for (const auto& pp : full_principal_part(f, d)) {
      RatFunc rest = f - polar_to_ratfunc(pp, d);
      EXPECT_TRUE(is_regular_at(rest, pp.point, d));
    }
    PointP1 x = random_finite_point(g);
    EXPECT_TRUE(is_regular_at(f - polar_to_ratfunc(polar_part(f, x)), x));
  }
}

TEST(RatFieldProperties, EmptyPrincipalPartIffGlobalSection) {
  Engine g(22);
  for (int t = 0; t < 200; ++t) {
    RatFunc f = (t % 2) ? random_ratfunc(g, 2, 2) : RatFunc(random_poly(g, 4));
    int d = static_cast<int>(uniform(g, -2, 4));
    bool global = f.is_zero() || (f.is_polynomial() && f.num().degree() <= d);
    EXPECT_EQ(full_principal_part(f, d).empty(), global) << to_string(f) << " d=" << d;
  }
}

TEST(RatFieldProperties, PolarPartIsAdditive) {
  Engine g(23);
  for (int t = 0; t < 200; ++t) {
    RatFunc f = random_ratfunc(g), h = random_ratfunc(g);
    PointP1 x = (t % 5 == 0) ? kInf : random_finite_point(g);
    PolarCoeffs sum = polar_part(f, x).coeffs;
    PolarCoeffs b = polar_part(h, x).coeffs;
    if (b.size() > sum.size()) sum.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) sum[i] += b[i];
    trim(sum);
    EXPECT_EQ(polar_part(f + h, x).coeffs, sum);
  }
}

TEST(RatFieldProperties, PartialFractionRoundTrip) {
  Engine g(24);
  for (int t = 0; t < 200; ++t) {
    RatFunc f = random_ratfunc(g, 3, 3);
    RatFunc rebuilt(divmod(f.num(), f.den()).first);
    for (const auto& pp : full_principal_part(f, 1000))
      if (!pp.point.is_infinity()) rebuilt += polar_to_ratfunc(pp);
    EXPECT_EQ(rebuilt, f);
  }
}

TEST(Text, PrintParseRoundTrip) {
  EXPECT_EQ(to_string(rf("z^3 - 2*z + 1/2")), "z^3 - 2*z + 1/2");
  EXPECT_EQ(to_string(rf("1/(z*(z-1))")), "(1)/(z^2 - z)");
  EXPECT_EQ(to_string(rf("-z")), "-z");
  EXPECT_EQ(to_string(rf("0")), "0");
  Engine g(25);
  for (int t = 0; t < 200; ++t) {
    RatFunc f = random_ratfunc(g, 3, 2);
    std::string s = to_string(f);
    EXPECT_EQ(parse_ratfunc(s), f);
    EXPECT_EQ(to_string(parse_ratfunc(s)), s);
  }
}

TEST(Text, MalformedInput) {
  for (const char* bad : {"z^", "2**z", "(z+1", "z $ 1", "", "1/0", "x + 1"}) {
    try {
      parse_ratfunc(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError) << bad;
    }
  }
}
