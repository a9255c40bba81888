#include "satolab/clt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <string>

#include "parallel.hpp"
#include "satolab/error.hpp"
#include "satolab/measures.hpp"
#include "satolab/quadrature.hpp"
#include "satolab/sampler.hpp"

namespace satolab {

namespace {

constexpr std::size_t kMemberBlock = 64;

}  // namespace

PrimeTable sieve_primes(Int x) {
  if (x < 2) throw ValidationError("sieve_primes needs x >= 2, got " + std::to_string(x));
  if (x > 2'000'000'000) throw ValidationError("sieve_primes: x too large");
  std::vector<bool> composite(static_cast<std::size_t>(x) + 1, false);
  PrimeTable t;
  for (Int p = 2; p <= x; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    t.primes.push_back(p);
    for (Int m = p * p; m <= x; m += p) composite[static_cast<std::size_t>(m)] = true;
  }
  t.count = t.primes.size();
  return t;
}

TestFunction::TestFunction(const RootSystem& rs, CharExpansion expansion, TestMode mode)
    : expansion_(std::move(expansion)), mode_(mode) {
  if (expansion_.empty()) throw ValidationError("test function: expansion is empty");
  validate_expansion(rs, expansion_);
  if (expansion_.coefficient(Weight::zero(rs.rank())) != 0.0) {
    throw ValidationError("test function: the trivial character must have coefficient 0");
  }
  const double ss = expansion_.sum_of_squares();
  if (std::abs(ss - 1.0) > kUnitVarianceTolerance) {
    throw ValidationError("test function: sum of squared coefficients is " + std::to_string(ss) + ", expected 1");
  }
  if (mode_ == TestMode::self_dual) {
    for (const auto& [lambda, c] : expansion_.terms()) {
      if (dual_weight(rs, lambda) != lambda) {
        throw ValidationError("test function: chi" + lambda.to_string() + " is not self-dual (use complex mode)");
      }
    }
  }
}

void validate(const FamilyConfig& cfg) {
  if (cfg.x < 3) throw ValidationError("family config: x must be >= 3");
  if (cfg.family_size < kMinFamilySize) throw ValidationError("family config: family size must be >= 100");
  if (cfg.threads < 1) throw ValidationError("family config: threads must be >= 1");
  if (cfg.prime_floor < 2 || cfg.prime_floor > cfg.x) {
    throw ValidationError("family config: prime floor must lie in [2, x]");
  }
  if (cfg.plancherel_cutoff < 2) throw ValidationError("family config: Plancherel cutoff must be >= 2");
}

std::uint64_t Histogram::total() const {
  std::uint64_t s = underflow + overflow;
  for (auto c : counts) s += c;
  return s;
}

double normal_cdf(double t) { return 0.5 * std::erfc(-t / std::numbers::sqrt2); }

double ks_distance(std::span<const double> samples) {
  if (samples.size() < 2) throw ValidationError("ks_distance needs at least 2 samples");
  std::vector<double> s(samples.begin(), samples.end());
  for (double v : s) {
    if (!std::isfinite(v)) throw ValidationError("ks_distance: non-finite sample");
  }
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = normal_cdf(s[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return std::clamp(d, 0.0, 1.0);
}

CLTReport summarize(std::span<const double> samples) {
  if (samples.size() < 2) throw ValidationError("summarize needs at least 2 samples");
  CLTReport r;
  r.n = samples.size();
  const double n = static_cast<double>(r.n);

  std::array<CompensatedSum<double>, 9> raw;
  for (double v : samples) {
    double pw = 1.0;
    for (int k = 1; k <= 8; ++k) {
      pw *= v;
      raw[static_cast<std::size_t>(k)].add(pw);
    }
  }
  for (int k = 1; k <= 8; ++k) r.raw_moments[static_cast<std::size_t>(k)] = raw[static_cast<std::size_t>(k)].value() / n;
  r.mean = r.raw_moments[1];

  CompensatedSum<double> c2, c3, c4;
  for (double v : samples) {
    const double d = v - r.mean;
    c2.add(d * d);
    c3.add(d * d * d);
    c4.add(d * d * d * d);
  }
  const double m2 = c2.value() / n;
  r.variance = c2.value() / (n - 1.0);
  r.skewness = m2 > 0.0 ? (c3.value() / n) / std::pow(m2, 1.5) : 0.0;
  r.excess_kurtosis = m2 > 0.0 ? (c4.value() / n) / (m2 * m2) - 3.0 : 0.0;
  r.ks = ks_distance(samples);

  Histogram& h = r.histogram;
  const double width = (kHistogramHi - kHistogramLo) / kHistogramBins;
  for (int b = 0; b <= kHistogramBins; ++b) h.edges.push_back(kHistogramLo + width * b);
  h.edges.back() = kHistogramHi;
  h.counts.assign(kHistogramBins, 0);
  for (double v : samples) {
    if (v < kHistogramLo) {
      ++h.underflow;
    } else if (v >= kHistogramHi) {
      ++h.overflow;
    } else {
      auto b = static_cast<int>(std::floor((v - kHistogramLo) / width));
      b = std::clamp(b, 0, kHistogramBins - 1);
      // Guard against rounding at the edges.
      if (v < h.edges[static_cast<std::size_t>(b)]) --b;
      if (b + 1 <= kHistogramBins - 1 && v >= h.edges[static_cast<std::size_t>(b + 1)]) ++b;
      ++h.counts[static_cast<std::size_t>(b)];
    }
  }
  return r;
}

std::vector<Complex> simulate_sums(const RootSystem& rs, const FamilyConfig& cfg, const DrawEvaluator& evaluate) {
  validate(cfg);
  if (!(cfg.group == rs.type())) throw ValidationError("family config: group does not match the root system");
  const PrimeTable table = sieve_primes(cfg.x);
  std::vector<Int> primes;
  for (Int p : table.primes) {
    if (p >= cfg.prime_floor) primes.push_back(p);
  }
  if (primes.empty()) throw ValidationError("family config: no primes in [prime_floor, x]");

  // One sampler per distinct density: Sato-Tate, plus one per small prime in
  // Plancherel mode.
  const TorusQuadrature st_grid = TorusQuadrature::for_bandwidth(rs, density_bandwidth(rs));
  auto st = std::make_shared<TorusSampler>(normalize(MeasureDensity::sato_tate(rs), st_grid, cfg.threads));
  std::vector<std::shared_ptr<const TorusSampler>> per_prime(primes.size(), st);
  if (cfg.sampling == SamplingMode::plancherel_per_prime) {
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (primes[i] > cfg.plancherel_cutoff) break;
      per_prime[i] = std::make_shared<TorusSampler>(
          normalize(MeasureDensity::plancherel(rs, primes[i]), st_grid, cfg.threads));
    }
  }

  const double scale = 1.0 / std::sqrt(static_cast<double>(primes.size()));
  const std::size_t n = cfg.family_size;
  std::vector<Complex> sums(n);
  const std::size_t blocks = (n + kMemberBlock - 1) / kMemberBlock;
  detail::parallel_blocks(blocks, cfg.threads, [&](std::size_t b) {
    std::vector<double> th(static_cast<std::size_t>(rs.rank()));
    const std::size_t end = std::min(n, (b + 1) * kMemberBlock);
    for (std::size_t i = b * kMemberBlock; i < end; ++i) {
      auto rng = substream(cfg.seed, i);
      CompensatedSum<Complex> s;
      for (const auto& sampler : per_prime) {
        sampler->draw(rng, th);
        s.add(evaluate(th));
      }
      sums[i] = s.value() * scale;
    }
  });
  return sums;
}

CLTReport simulate_family(const RootSystem& rs, const FamilyConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const TestFunction h(rs, cfg.test_fn, TestMode::self_dual);
  const CharacterPolynomial poly(rs, h.expansion());
  const auto sums = simulate_sums(rs, cfg, [&](std::span<const double> th) { return Complex(poly.real_part(th)); });
  std::vector<double> re(sums.size());
  std::transform(sums.begin(), sums.end(), re.begin(), [](Complex z) { return z.real(); });
  CLTReport r = summarize(re);
  r.x = cfg.x;
  r.prime_count = 0;
  for (Int p : sieve_primes(cfg.x).primes) r.prime_count += p >= cfg.prime_floor ? 1 : 0;
  r.seed = cfg.seed;
  r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

double complex_gaussian_re_moment(int a) {
  if (a < 0) throw ValidationError("moment order must be >= 0");
  if (a % 2 != 0) return 0.0;
  // a! / (2^a (a/2)!) = (a-1)!! / 2^(a/2)
  double v = 1.0;
  for (int k = a - 1; k > 0; k -= 2) v *= k;
  return v / std::pow(2.0, a / 2);
}

std::vector<ComplexMoment> complex_moments(const RootSystem& rs, const FamilyConfig& cfg, int max_order) {
  if (max_order < 1 || max_order > kMaxComplexMoment) {
    throw ValidationError("complex moment order must lie in [1, 8]");
  }
  const TestFunction h(rs, cfg.test_fn, TestMode::complex);
  if (is_self_dual(rs, h.expansion())) {
    throw ValidationError("complex_moments needs a non-self-dual test function (use simulate_family)");
  }
  const CharacterPolynomial poly(rs, h.expansion());
  const auto sums = simulate_sums(rs, cfg, [&](std::span<const double> th) { return poly(th); });
  const double n = static_cast<double>(sums.size());

  std::vector<ComplexMoment> out;
  for (int a = 1; a <= max_order; ++a) {
    std::vector<Complex> z(sums.size());
    std::vector<double> re(sums.size()), im(sums.size());
    CompensatedSum<Complex> sz;
    CompensatedSum<double> sre, sim;
    for (std::size_t i = 0; i < sums.size(); ++i) {
      z[i] = std::pow(sums[i], a);
      re[i] = std::pow(sums[i].real(), a);
      im[i] = std::pow(sums[i].imag(), a);
      sz.add(z[i]);
      sre.add(re[i]);
      sim.add(im[i]);
    }
    ComplexMoment m;
    m.order = a;
    m.raw = sz.value() / n;
    m.re = sre.value() / n;
    m.im = sim.value() / n;
    CompensatedSum<double> vz, vre, vim;
    for (std::size_t i = 0; i < sums.size(); ++i) {
      vz.add(std::norm(z[i] - m.raw));
      vre.add((re[i] - m.re) * (re[i] - m.re));
      vim.add((im[i] - m.im) * (im[i] - m.im));
    }
    m.raw_se = std::sqrt(vz.value() / (n - 1.0) / n);
    m.re_se = std::sqrt(vre.value() / (n - 1.0) / n);
    m.im_se = std::sqrt(vim.value() / (n - 1.0) / n);
    m.gaussian_limit = complex_gaussian_re_moment(a);
    out.push_back(m);
  }
  return out;
}

ComplexMoment complex_moment(const RootSystem& rs, const FamilyConfig& cfg, int a) {
  return complex_moments(rs, cfg, a).back();
}

}  // namespace satolab
