#include "satolab/dim_formulas.hpp"

#include <string>

#include "satolab/error.hpp"

namespace satolab {

namespace {

BigInt binomial(int n, int k) {
  BigInt b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

const std::vector<Rational>& bernoulli_table() {
  static const std::vector<Rational> table = [] {
    // sum_{i=0}^{m} C(m+1, i) B_i = 0 for m >= 1.
    std::vector<Rational> b(kMaxBernoulli + 1);
    b[0] = 1;
    for (int m = 1; m <= kMaxBernoulli; ++m) {
      Rational s = 0;
      for (int i = 0; i < m; ++i) s += Rational(binomial(m + 1, i)) * b[static_cast<std::size_t>(i)];
      b[static_cast<std::size_t>(m)] = -s / (m + 1);
    }
    return b;
  }();
  return table;
}

void require_genus(int n) {
  if (n < 1 || n > 50) throw ValidationError("Siegel leading term: genus n must lie in [1, 50]");
}

}  // namespace

Rational bernoulli(int j) {
  if (j < 0 || j > kMaxBernoulli) {
    throw ValidationError("bernoulli: j must lie in [0, 100], got " + std::to_string(j));
  }
  return bernoulli_table()[static_cast<std::size_t>(j)];
}

std::vector<Int> prime_divisors(Int n) {
  if (n < 1 || n > 1'000'000'000) throw ValidationError("prime_divisors: n must lie in [1, 1e9]");
  std::vector<Int> out;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

Rational siegel_level_factor(int n, Int level) {
  require_genus(n);
  if (level <= 2) throw ValidationError("Siegel leading term: level N must be > 2");
  Rational f = boost::multiprecision::pow(BigInt(level), n * (2 * n + 1));
  for (Int p : prime_divisors(level)) {
    for (int j = 1; j <= n; ++j) {
      const BigInt q = boost::multiprecision::pow(BigInt(p), 2 * j);
      f *= Rational(q - 1, q);
    }
  }
  return f;
}

Rational siegel_weight_factor(int n, Int k) {
  require_genus(n);
  if (k <= n + 1) throw ValidationError("Siegel leading term: weight k must exceed n + 1");
  BigInt f = 1;
  for (int t = 1; t <= n; ++t) {
    for (int u = t; u <= n; ++u) f *= 2 * k - t - u;
  }
  return f;
}

Rational siegel_constant_factor(int n) {
  require_genus(n);
  Rational f = 1;
  for (int j = 1; j <= n; ++j) {
    const Rational b = abs(bernoulli(2 * j));
    f *= Rational(factorial(j - 1)) * b / Rational(factorial(2 * j - 1) * j);
  }
  return f / Rational(boost::multiprecision::pow(BigInt(2), 3 * n));
}

Rational siegel_leading_term(int n, Int k, Int level) {
  return siegel_level_factor(n, level) * siegel_weight_factor(n, k) * siegel_constant_factor(n);
}

Rational g2_leading_term(Int k, const Rational& index_ratio) {
  if (k < 1) throw ValidationError("G2 leading term: weight k must be >= 1");
  if (index_ratio <= 0) throw ValidationError("G2 leading term: index ratio must be positive");
  const BigInt kk = k;
  const BigInt poly = (kk - 1) * kk * (2 * kk - 1) * (3 * kk - 2) * (3 * kk - 1);
  return Rational(poly, kG2Denominator) * index_ratio;
}

}  // namespace satolab
