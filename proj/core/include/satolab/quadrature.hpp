#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "satolab/characters.hpp"
#include "satolab/root_system.hpp"

namespace satolab {

/// Neumaier-compensated running sum. Adding the same values in the same
/// order always yields the same bits.
template <typename T>
class CompensatedSum {
 public:
  void add(T x);
  void add(const CompensatedSum& other) {
    add(other.sum_);
    add(other.comp_);
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

template <>
inline void CompensatedSum<double>::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

template <>
inline void CompensatedSum<std::complex<double>>::add(std::complex<double> x) {
  auto step = [](double& sum, double& comp, double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  };
  double sr = sum_.real(), si = sum_.imag(), cr = comp_.real(), ci = comp_.imag();
  step(sr, cr, x.real());
  step(si, ci, x.imag());
  sum_ = {sr, si};
  comp_ = {cr, ci};
}

/// Product trapezoid rule on the compact torus with M equispaced nodes per
/// angle over one period. M is odd; trigonometric polynomials whose
/// per-coordinate frequency is below M/2 are integrated exactly against
/// normalized Haar measure.
class TorusQuadrature {
 public:
  TorusQuadrature(const RootSystem& rs, int nodes_per_dim);
  /// Smallest admissible grid for an integrand of per-coordinate frequency
  /// `bandwidth`: M = 2*bandwidth + 3.
  static TorusQuadrature for_bandwidth(const RootSystem& rs, int bandwidth);

  const RootSystem& root_system() const { return *rs_; }
  int nodes_per_dim() const { return nodes_; }
  /// Largest per-coordinate frequency integrated exactly.
  int max_frequency() const { return (nodes_ - 1) / 2; }
  std::size_t node_count() const { return count_; }
  double weight() const { return 1.0 / static_cast<double>(count_); }

  void node(std::size_t index, std::span<double> thetas) const;

  /// Weighted sum over all nodes; deterministic regardless of `threads`.
  double integrate(const std::function<double(std::span<const double>)>& f, int threads = 1) const;
  Complex integrate_complex(const std::function<Complex(std::span<const double>)>& f, int threads = 1) const;

  /// Throws NumericalGuardError when an integrand of the given
  /// per-coordinate frequency would alias on this grid.
  void require_bandwidth(int frequency, const char* what) const;

 private:
  const RootSystem* rs_;
  int nodes_;
  std::size_t count_;
  double step_;
};

/// Per-coordinate frequency of a weight in grid units (integers for every
/// lattice weight of rs).
int weight_frequency(const RootSystem& rs, const Weight& mu);
/// Bandwidth of chi_lambda: max over the Weyl orbit of the weight frequency.
int character_bandwidth(const RootSystem& rs, const Weight& lambda);
int expansion_bandwidth(const RootSystem& rs, const CharExpansion& e);
/// Bandwidth of |delta|^2 = prod_{alpha>0} |1 - e^alpha|^2.
int density_bandwidth(const RootSystem& rs);

/// Gauss quadrature for the weight sqrt(1 - t^2) on [-1, 1] (Chebyshev
/// polynomials of the second kind); exact for polynomials of degree < 2n.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_chebyshev_second_kind(int n);

}  // namespace satolab
