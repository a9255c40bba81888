#pragma once

#include <vector>

#include "satolab/root_system.hpp"

namespace satolab {

/// Bernoulli number B_j for 0 <= j <= 100, with B_1 = -1/2.
Rational bernoulli(int j);
inline constexpr int kMaxBernoulli = 100;

/// Prime divisors of n (trial division); requires 1 <= n <= 1e9.
std::vector<Int> prime_divisors(Int n);

/// The four factors of the Siegel leading term, exposed for testing.
/// N^{n(2n+1)} prod_{p | N} prod_{j<=n} (1 - p^{-2j})
Rational siegel_level_factor(int n, Int level);
/// prod_{t=1}^n prod_{u=t}^n (2k - t - u)
Rational siegel_weight_factor(int n, Int k);
/// prod_{j<=n} (j-1)! |B_{2j}| / ((2j-1)! j) * 2^{-3n}
Rational siegel_constant_factor(int n);

/// v(K(N)) d(sigma_k) for Sp_{2n}; requires n >= 1, k > n + 1, N > 2.
Rational siegel_leading_term(int n, Int k, Int level);

inline constexpr Int kG2Denominator = 1451520;  // 2^9 3^4 5 7

/// (k-1) k (2k-1) (3k-2) (3k-1) / (2^9 3^4 5 7) times the index ratio;
/// requires k >= 1 and ratio > 0.
Rational g2_leading_term(Int k, const Rational& index_ratio);

}  // namespace satolab
