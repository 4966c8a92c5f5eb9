#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace symext {

namespace detail {

inline Integer pollard_brent(const Integer& n) {
  if (n % 2 == 0) return Integer(2);
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto step = [&](const Integer& v) {
      Integer r = v * v + c;
      return Integer(r % n);
    };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      Integer diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

inline void factor_into(Integer n, std::map<Integer, int>& out) {
  if (n < 0) n = -n;
  if (n <= 1) return;
  for (unsigned long p = 2; p < 10000; ++p) {
    if (Integer(p) * p > n) break;
    while (n % p == 0) {
      ++out[Integer(p)];
      n /= p;
    }
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    ++out[n];
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(Integer(n / d), out);
}

inline std::vector<Integer> divisors(const Integer& n) {
  std::map<Integer, int> primes;
  factor_into(n, primes);
  std::vector<Integer> divs{Integer(1)};
  for (const auto& [p, e] : primes) {
    std::size_t size = divs.size();
    Integer pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < size; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

/// Integer-coefficient primitive multiple of p (p nonzero).
inline std::vector<Integer> primitive_integer(const Poly& p) {
  Integer lcm = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> v;
  Integer content = 0;
  for (const auto& c : p.coeffs()) {
    Integer x = c.get_num() * (lcm / c.get_den());
    v.push_back(x);
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
  }
  for (auto& x : v) x /= content;
  return v;
}

/// Evaluates the homogenized integer polynomial at num/den, up to the
/// positive factor den^deg.
inline bool vanishes_at(const std::vector<Integer>& c, const Integer& num, const Integer& den) {
  Integer acc = 0, den_pow = 1;
  // sum c_k num^k den^(n-k), Horner in num with den powers folded in
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * num + *it * den_pow;
    den_pow *= den;
  }
  return acc == 0;
}

}  // namespace detail

/// Rational roots of a polynomial with multiplicities, plus the monic
/// cofactor carrying no rational roots.
struct RootSplit {
  std::vector<std::pair<Rational, int>> roots;  // ascending by root
  Poly rest;
};

inline RootSplit rational_roots(const Poly& p) {
  if (p.is_zero()) fail(ErrorCode::ZeroFunction, "roots of the zero polynomial");
  RootSplit out;
  Poly rest = p.monic();
  if (int k = rest.low_order(); k > 0) {
    out.roots.emplace_back(Rational(0), k);
    rest = rest.drop_low(k);
  }
  if (rest.degree() >= 1) {
    Poly squarefree = divmod(rest, gcd(rest, rest.derivative())).first.monic();
    std::vector<Integer> ints = detail::primitive_integer(squarefree);
    std::set<Rational> candidates;
    if (squarefree.degree() >= 1) {
      auto nums = detail::divisors(ints.front());
      auto dens = detail::divisors(ints.back());
      for (const auto& a : nums) {
        for (const auto& b : dens) {
          Rational r(a, b);
          r.canonicalize();
          candidates.insert(r);
          candidates.insert(Rational(-r));
        }
      }
    }
    int remaining = squarefree.degree();
    for (const auto& r : candidates) {
      if (remaining == 0) break;
      if (!detail::vanishes_at(ints, r.get_num(), r.get_den())) continue;
      --remaining;
      int mult = 0;
      Poly lin = Poly::linear(r);
      while (rest.degree() >= 1) {
        auto [q, rem] = divmod(rest, lin);
        if (!rem.is_zero()) break;
        rest = q;
        ++mult;
      }
      out.roots.emplace_back(r, mult);
    }
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  out.rest = rest.monic();
  return out;
}

}  // namespace symext
