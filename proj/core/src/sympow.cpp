#include "satolab/sympow.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "satolab/error.hpp"
#include "satolab/measures.hpp"
#include "satolab/quadrature.hpp"

namespace satolab {

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;

void require_power(int u, int max, const char* what) {
  if (u < 0 || u > max) {
    throw ValidationError(std::string(what) + ": u must lie in [0, " + std::to_string(max) + "], got " +
                          std::to_string(u));
  }
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

SparsePolynomial multiply(const SparsePolynomial& a, const SparsePolynomial& b, int max_degree) {
  SparsePolynomial c;
  for (const auto& [ea, ca] : a) {
    const int da = std::accumulate(ea.begin(), ea.end(), 0);
    for (const auto& [eb, cb] : b) {
      const int db = std::accumulate(eb.begin(), eb.end(), 0);
      if (da + db > max_degree) continue;
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      c[e] += ca * cb;
    }
  }
  std::erase_if(c, [](const auto& kv) { return kv.second == 0; });
  return c;
}

SparsePolynomial homogeneous_part(const SparsePolynomial& p, int degree) {
  SparsePolynomial out;
  for (const auto& [e, c] : p) {
    if (std::accumulate(e.begin(), e.end(), 0) == degree) out.emplace(e, c);
  }
  return out;
}

SparsePolynomial constant(int n, const BigInt& c) {
  SparsePolynomial p;
  if (c != 0) p.emplace(std::vector<int>(static_cast<std::size_t>(n), 0), c);
  return p;
}

void require_jt(int n, int u) {
  if (n < 1 || n > 5) throw ValidationError("Jacobi-Trudi: n must lie in [1, 5]");
  if (u < 0 || u > 6) throw ValidationError("Jacobi-Trudi: u must lie in [0, 6]");
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPolynomial::coefficient(int k) const {
  if (k < 0 || k > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(k)];
}

double IntPolynomial::operator()(double x) const {
  Float50 acc = 0;
  const Float50 fx = x;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * fx + Float50(*it);
  return static_cast<double>(acc);
}

BigInt IntPolynomial::evaluate_exact(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPolynomial h_polynomial(int u) {
  require_power(u, kMaxSymPower, "h_polynomial");
  std::vector<BigInt> prev{1};        // H_0
  std::vector<BigInt> cur{0, 1};      // H_1
  if (u == 0) return IntPolynomial(prev);
  for (int k = 1; k < u; ++k) {
    std::vector<BigInt> next(cur.size() + 1, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return IntPolynomial(cur);
}

double h_via_determinant(int u, double x) {
  require_power(u, kMaxSymPower, "h_via_determinant");
  // D_k = x D_{k-1} - D_{k-2}: cofactor expansion of the k x k minor.
  double d_prev = 1.0;
  double d = x;
  if (u == 0) return d_prev;
  for (int k = 2; k <= u; ++k) {
    const double next = x * d - d_prev;
    d_prev = d;
    d = next;
  }
  return d;
}

std::pair<double, double> chebyshev_check(int u, double theta) {
  require_power(u, kMaxSymPower, "chebyshev_check");
  const double s = std::sin(theta);
  if (std::abs(s) <= 1e-6) throw ValidationError("chebyshev_check: sin(theta) is too close to 0");
  return {h_polynomial(u)(2.0 * std::cos(theta)), std::sin((u + 1) * theta) / s};
}

Rational semicircle_moment(int u) {
  require_power(u, 30, "semicircle_moment");
  return Rational(factorial(2 * u), factorial(u + 1) * factorial(u));
}

double semicircle_moment_quadrature(int k) {
  if (k < 0) throw ValidationError("semicircle_moment_quadrature: k must be >= 0");
  // x = 2t: (1/2pi) sqrt(4 - x^2) dx = (2/pi) sqrt(1 - t^2) dt.
  const GaussRule rule = gauss_chebyshev_second_kind(k / 2 + 2);
  Float50 acc = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    acc += Float50(rule.weights[i]) * boost::multiprecision::pow(Float50(2.0 * rule.nodes[i]), k);
  }
  return static_cast<double>(acc * 2 / boost::math::constants::pi<Float50>());
}

double h_orthonormality(int u, int v) {
  require_power(u, 60, "h_orthonormality");
  require_power(v, 60, "h_orthonormality");
  static const RootSystem a1 = build_root_system(GroupType::make(Family::A, 1));
  const IntPolynomial hu = h_polynomial(u);
  const IntPolynomial hv = h_polynomial(v);
  // On A1 the Sato-Tate weight over the full circle is |delta|^2 / |W| = 2 sin^2.
  const TorusQuadrature q = TorusQuadrature::for_bandwidth(a1, u + v + density_bandwidth(a1));
  const double inv_order = 1.0 / static_cast<double>(a1.weyl_order());
  return q.integrate([&](std::span<const double> th) {
    const double x = 2.0 * std::cos(th[0]);
    return hu(x) * hv(x) * st_density(a1, th) * inv_order;
  });
}

SparsePolynomial complete_homogeneous(int n, int u) {
  require_jt(n, u);
  SparsePolynomial acc = constant(n, 1);
  for (int k = 0; k < n; ++k) {
    SparsePolynomial geometric;  // 1 + x_k + ... + x_k^u
    for (int j = 0; j <= u; ++j) {
      std::vector<int> e(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(k)] = j;
      geometric.emplace(std::move(e), 1);
    }
    acc = multiply(acc, geometric, u);
  }
  return homogeneous_part(acc, u);
}

SparsePolynomial elementary(int n, int k) {
  if (n < 1 || n > 5) throw ValidationError("elementary: n must lie in [1, 5]");
  if (k < 0 || k > n) return {};
  SparsePolynomial acc = constant(n, 1);
  for (int i = 0; i < n; ++i) {
    SparsePolynomial linear = constant(n, 1);
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = 1;
    linear.emplace(std::move(e), 1);
    acc = multiply(acc, linear, n);
  }
  return homogeneous_part(acc, k);
}

SparsePolynomial jacobi_trudi_determinant(int n, int u) {
  require_jt(n, u);
  if (u == 0) return constant(n, 1);
  std::vector<SparsePolynomial> e(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) e[static_cast<std::size_t>(k)] = elementary(n, k);
  auto entry = [&](int i, int j) -> const SparsePolynomial* {  // 0-based i, j
    const int k = 1 - (i + 1) + (j + 1);
    if (k < 0 || k > n) return nullptr;
    return &e[static_cast<std::size_t>(k)];
  };
  std::vector<int> perm(static_cast<std::size_t>(u));
  std::iota(perm.begin(), perm.end(), 0);
  SparsePolynomial det;
  do {
    int inversions = 0;
    for (int i = 0; i < u; ++i) {
      for (int j = i + 1; j < u; ++j) inversions += perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)];
    }
    SparsePolynomial term = constant(n, inversions % 2 == 0 ? 1 : -1);
    for (int i = 0; i < u && !term.empty(); ++i) {
      const SparsePolynomial* m = entry(i, perm[static_cast<std::size_t>(i)]);
      if (m == nullptr) {
        term.clear();
      } else {
        term = multiply(term, *m, u);
      }
    }
    for (const auto& [exp, c] : term) det[exp] += c;
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::erase_if(det, [](const auto& kv) { return kv.second == 0; });
  return det;
}

bool jacobi_trudi_check(int n, int u) { return complete_homogeneous(n, u) == jacobi_trudi_determinant(n, u); }

CLTReport sympow_clt(const SymPowConfig& cfg) {
  if (cfg.u < 1) throw ValidationError("sympow_clt: u must be >= 1");
  require_power(cfg.u, kMaxSymPower, "sympow_clt");
  const auto start = std::chrono::steady_clock::now();
  static const RootSystem a1 = build_root_system(GroupType::make(Family::A, 1));
  FamilyConfig fc;
  fc.group = a1.type();
  fc.x = cfg.x;
  fc.family_size = cfg.family_size;
  fc.seed = cfg.seed;
  fc.threads = cfg.threads;
  const int u = cfg.u;
  const auto sums = simulate_sums(a1, fc, [u](std::span<const double> th) {
    return Complex(h_via_determinant(u, 2.0 * std::cos(th[0])));
  });
  std::vector<double> re(sums.size());
  std::transform(sums.begin(), sums.end(), re.begin(), [](Complex z) { return z.real(); });
  CLTReport r = summarize(re);
  r.x = cfg.x;
  r.prime_count = sieve_primes(cfg.x).count;
  r.seed = cfg.seed;
  r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace satolab
