#include "doctest.h"

#include "satolab/dim_formulas.hpp"
#include "satolab/error.hpp"

using namespace satolab;

namespace {

Rational q(long long n, long long d = 1) { return Rational(BigInt(n), BigInt(d)); }

BigInt choose(int n, int k) {
  // Pascal's triangle, independent of the library's binomial.
  std::vector<BigInt> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<BigInt> next(row.size() + 1, 0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      next[j] += row[j];
      next[j + 1] += row[j];
    }
    row = next;
  }
  return row[static_cast<std::size_t>(k)];
}

}  // namespace

TEST_CASE("Bernoulli numbers") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == q(-1, 2));
  CHECK(bernoulli(2) == q(1, 6));
  CHECK(bernoulli(3) == 0);
  CHECK(bernoulli(4) == q(-1, 30));
  CHECK(bernoulli(12) == q(-691, 2730));
  for (int j = 3; j <= 99; j += 2) CHECK(bernoulli(j) == 0);
  for (int m = 1; m <= 100; ++m) {
    Rational s = 0;
    for (int i = 0; i <= m; ++i) s += Rational(choose(m + 1, i)) * bernoulli(i);
    // The recurrence stops at B_100; the m = 100 row needs B_100 itself.
    CHECK(s == 0);
  }
  CHECK_THROWS_AS(bernoulli(101), ValidationError);
  CHECK_THROWS_AS(bernoulli(-1), ValidationError);
}

TEST_CASE("prime divisors") {
  CHECK(prime_divisors(12) == std::vector<Int>{2, 3});
  CHECK(prime_divisors(97) == std::vector<Int>{97});
  CHECK(prime_divisors(1).empty());
  CHECK(prime_divisors(999999937) == std::vector<Int>{999999937});
}

TEST_CASE("Siegel leading term") {
  // (j-1)! |B_2j| / ((2j-1)! j) for j = 1, 2, then 2^-6.
  const Rational j1 = q(1, 6) / 1;
  const Rational j2 = q(1) * q(1, 30) / (q(6) * 2);
  CHECK(j1 * j2 == q(1, 2160));
  CHECK(siegel_constant_factor(2) == j1 * j2 / 64);
  CHECK(siegel_constant_factor(2) == q(1, 138240));
  CHECK(siegel_constant_factor(1) == q(1, 48));

  const Rational level = Rational(BigInt(59049)) * q(8, 9) * q(80, 81);  // 3^10 (1 - 3^-2)(1 - 3^-4)
  CHECK(siegel_level_factor(2, 3) == level);
  CHECK(siegel_weight_factor(2, 10) == 18 * 17 * 16);
  CHECK(siegel_leading_term(2, 10, 3) == level * (18 * 17 * 16) * q(1, 138240));
  CHECK(siegel_weight_factor(1, 12) == 22);

  // Level part does not depend on k.
  for (Int k : {4, 7, 30}) CHECK(siegel_leading_term(2, k, 6) / siegel_leading_term(2, k, 5) == siegel_level_factor(2, 6) / siegel_level_factor(2, 5));
  for (int n = 1; n <= 4; ++n) CHECK(siegel_leading_term(n, n + 2, 3) > 0);

  CHECK_THROWS_AS(siegel_leading_term(2, 3, 3), ValidationError);
  CHECK_THROWS_AS(siegel_leading_term(2, 10, 2), ValidationError);
  CHECK_THROWS_AS(siegel_leading_term(0, 10, 3), ValidationError);
}

TEST_CASE("G2 leading term") {
  CHECK(kG2Denominator == 512 * 81 * 5 * 7);
  CHECK(g2_leading_term(2, 1) == q(1 * 2 * 3 * 4 * 5, 1451520));
  CHECK(g2_leading_term(2, 1) == q(1, 12096));
  CHECK(g2_leading_term(1, 1) == 0);
  for (Int k : {3, 10, 57}) CHECK(g2_leading_term(k, 2) == 2 * g2_leading_term(k, 1));
  CHECK(g2_leading_term(5, q(3, 7)) == g2_leading_term(5, 1) * q(3, 7));
  for (Int k : {200, 400, 1000}) {
    const double ratio = static_cast<double>(g2_leading_term(2 * k, 1) / g2_leading_term(k, 1));
    CHECK(std::abs(ratio / 32.0 - 1.0) < 0.01);
  }
  CHECK_THROWS_AS(g2_leading_term(0, 1), ValidationError);
  CHECK_THROWS_AS(g2_leading_term(3, 0), ValidationError);
}
