#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "solvlie/matrix.hpp"
#include "solvlie/rational.hpp"

namespace solvlie {

/// Dense univariate polynomial, coefficients from the constant term upward.
using Polynomial = std::vector<Rational>;

inline void trim(Polynomial& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline Rational evaluate(const Polynomial& p, const Rational& x) {
  Rational acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// det(x I - M) by Faddeev-LeVerrier. Monic, degree = rows(M).
inline Polynomial characteristic_polynomial(const RatMatrix& m) {
  if (!m.is_square()) throw InputError("characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  Polynomial c(n + 1);
  c[n] = Rational(1);
  RatMatrix mk(n, n);
  const RatMatrix id = RatMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk + c[n - k + 1] * id;
    c[n - k] = -trace(m * mk) / Rational(static_cast<long>(k));
  }
  return c;
}

/// Divides p by (x - r); the remainder is discarded (caller ensures p(r) = 0).
inline Polynomial deflate(const Polynomial& p, const Rational& r) {
  if (p.size() < 2) return {};
  Polynomial q(p.size() - 1);
  Rational carry;
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    carry = carry * r + p[i + 1];
    q[i] = carry;
  }
  return q;
}

namespace detail {

inline mpz_class pollard_brent(const mpz_class& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    mpz_class y = 2, x, g = 1, q = 1, ys;
    const unsigned long m = 64;
    unsigned long r = 1;
    auto f = [&](const mpz_class& v) { return mpz_class((v * v + c) % n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = (q * abs(mpz_class(x - y))) % n;
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(mpz_class(abs(mpz_class(x - ys))), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_into(mpz_class n, std::map<mpz_class, unsigned>& out) {
  if (n < 2) return;
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    while (n % p == 0) {
      ++out[mpz_class(p)];
      n /= p;
    }
  }
  for (unsigned long p = 7; p < 100000 && mpz_class(p) * p <= n; p += 2) {
    while (n % p == 0) {
      ++out[mpz_class(p)];
      n /= p;
    }
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    ++out[n];
    return;
  }
  mpz_class d = pollard_brent(n);
  factor_into(d, out);
  factor_into(mpz_class(n / d), out);
}

/// All positive divisors of |n|, n != 0.
inline std::vector<mpz_class> divisors(const mpz_class& n) {
  std::map<mpz_class, unsigned> f;
  factor_into(abs(n), f);
  std::vector<mpz_class> ds{1};
  for (const auto& [p, e] : f) {
    std::size_t cur = ds.size();
    mpz_class pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < cur; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

}  // namespace detail

/// Rational roots with multiplicity, ascending. Found with the rational-root
/// theorem on the integer-scaled polynomial; roots not in Q are simply absent.
inline std::vector<std::pair<Rational, std::size_t>> rational_roots(Polynomial p) {
  trim(p);
  std::vector<std::pair<Rational, std::size_t>> roots;
  if (p.size() <= 1) return roots;

  std::size_t zero_mult = 0;
  while (p.size() > 1 && p.front().is_zero()) {
    p.erase(p.begin());
    ++zero_mult;
  }
  if (zero_mult) roots.emplace_back(Rational(0), zero_mult);
  if (p.size() <= 1) return roots;

  mpz_class lcm_den = 1;
  for (const auto& c : p) lcm_den = lcm(lcm_den, c.denominator());
  mpz_class lead = (p.back() * Rational(lcm_den)).numerator();
  mpz_class constant = (p.front() * Rational(lcm_den)).numerator();

  auto ps = detail::divisors(constant);
  auto qs = detail::divisors(lead);
  std::vector<Rational> candidates;
  for (const auto& num : ps)
    for (const auto& den : qs) {
      Rational c{mpq_class(num, den)};
      candidates.push_back(c);
      candidates.push_back(-c);
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (const auto& c : candidates) {
    if (p.size() <= 1) break;
    std::size_t mult = 0;
    while (p.size() > 1 && evaluate(p, c).is_zero()) {
      p = deflate(p, c);
      ++mult;
    }
    if (mult) roots.emplace_back(c, mult);
  }
  std::sort(roots.begin(), roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return roots;
}

}  // namespace solvlie
