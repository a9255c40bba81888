#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "satolab/characters.hpp"
#include "satolab/root_system.hpp"

namespace satolab {

struct PrimeTable {
  std::vector<Int> primes;
  std::size_t count = 0;  // pi(x)
};

/// Sieve of Eratosthenes; requires x >= 2.
PrimeTable sieve_primes(Int x);

enum class TestMode { self_dual, complex };

/// Coefficients c_lambda of a test function h = sum c_lambda chi_lambda.
/// No constant term, sum c^2 = 1 within 1e-12, and in self-dual mode every
/// weight with a nonzero coefficient is its own dual.
class TestFunction {
 public:
  TestFunction(const RootSystem& rs, CharExpansion expansion, TestMode mode = TestMode::self_dual);

  const CharExpansion& expansion() const { return expansion_; }
  TestMode mode() const { return mode_; }

 private:
  CharExpansion expansion_;
  TestMode mode_;
};

inline constexpr double kUnitVarianceTolerance = 1e-12;

enum class SamplingMode { sato_tate_only, plancherel_per_prime };

inline constexpr Int kPlancherelCutoff = 500;
inline constexpr std::size_t kMinFamilySize = 100;

struct FamilyConfig {
  GroupType group;
  CharExpansion test_fn;
  TestMode mode = TestMode::self_dual;
  Int x = 10000;
  std::size_t family_size = 20000;
  SamplingMode sampling = SamplingMode::sato_tate_only;
  std::uint64_t seed = 0;
  int threads = 1;
  // Only primes in [prime_floor, x] contribute; the sum is normalized by
  // the square root of their number, which is pi(x) for the default floor.
  Int prime_floor = 2;
  // Primes above this use the Sato-Tate density in Plancherel mode.
  Int plancherel_cutoff = kPlancherelCutoff;
};

/// Checks x >= 3, N >= 100, threads >= 1 and a usable prime range.
void validate(const FamilyConfig& cfg);

inline constexpr int kHistogramBins = 61;
inline constexpr double kHistogramLo = -4.0;
inline constexpr double kHistogramHi = 4.0;

struct Histogram {
  std::vector<double> edges;          // kHistogramBins + 1 edges
  std::vector<std::uint64_t> counts;  // kHistogramBins
  std::uint64_t underflow = 0;        // below the first edge
  std::uint64_t overflow = 0;         // at or above the last edge
  std::uint64_t total() const;
};

struct CLTReport {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  std::array<double, 9> raw_moments{};  // raw_moments[k] = mean of S^k, k = 1..8
  double ks = 0.0;
  Histogram histogram;
  Int x = 0;
  std::size_t prime_count = 0;  // number of primes summed over
  std::uint64_t seed = 0;
  double runtime_seconds = 0.0;
};

/// Standard normal CDF.
double normal_cdf(double t);

/// sup |F_n - Phi| over the samples; requires at least two samples.
double ks_distance(std::span<const double> samples);

/// Moments, KS distance and histogram of real samples (deterministic).
CLTReport summarize(std::span<const double> samples);

/// Per-draw evaluator h(theta) used by the family simulator.
using DrawEvaluator = std::function<Complex(std::span<const double>)>;

/// Normalized sums S_i = sum_p h(t_p) / sqrt(#primes) for i < N. Member i
/// draws from substream(seed, i); the result does not depend on threads.
/// cfg.test_fn is ignored; h is supplied by `evaluate`.
std::vector<Complex> simulate_sums(const RootSystem& rs, const FamilyConfig& cfg, const DrawEvaluator& evaluate);

/// CLT experiment for a self-dual test function.
CLTReport simulate_family(const RootSystem& rs, const FamilyConfig& cfg);

struct ComplexMoment {
  int order = 0;
  Complex raw;             // mean of S^a
  double raw_se = 0.0;     // sqrt(E|S^a - mean|^2 / N)
  double re = 0.0;         // mean of (Re S)^a
  double re_se = 0.0;
  double im = 0.0;         // mean of (Im S)^a
  double im_se = 0.0;
  double gaussian_limit = 0.0;  // a! / (2^a (a/2)!) for even a, else 0
};

inline constexpr int kMaxComplexMoment = 8;

/// Limit of the a-th moment of Re S (and Im S) for a non-self-dual test function.
double complex_gaussian_re_moment(int a);

/// Moments of orders 1..max_order from one simulation. Requires a test
/// function that is not self-dual.
std::vector<ComplexMoment> complex_moments(const RootSystem& rs, const FamilyConfig& cfg, int max_order);
/// The single order `a`.
ComplexMoment complex_moment(const RootSystem& rs, const FamilyConfig& cfg, int a);

}  // namespace satolab
