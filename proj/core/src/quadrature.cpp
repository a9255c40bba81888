#include "satolab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "parallel.hpp"
#include "satolab/error.hpp"

namespace satolab {

namespace {

constexpr std::size_t kChunk = 4096;

template <typename T, typename F>
T chunked_sum(std::size_t count, int rank, const TorusQuadrature& q, const F& f, int threads) {
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  std::vector<CompensatedSum<T>> partial(chunks);
  detail::parallel_blocks(chunks, threads, [&](std::size_t c) {
    std::vector<double> thetas(static_cast<std::size_t>(rank));
    const std::size_t end = std::min(count, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      q.node(i, thetas);
      partial[c].add(f(std::span<const double>(thetas)));
    }
  });
  CompensatedSum<T> total;
  for (const auto& p : partial) total.add(p);
  return total.value();
}

}  // namespace

TorusQuadrature::TorusQuadrature(const RootSystem& rs, int nodes_per_dim) : rs_(&rs), nodes_(nodes_per_dim) {
  if (nodes_ < 1 || nodes_ % 2 == 0) {
    throw ValidationError("torus quadrature needs an odd positive node count, got " + std::to_string(nodes_));
  }
  count_ = 1;
  for (int i = 0; i < rs.rank(); ++i) {
    if (count_ > (std::size_t{1} << 40) / static_cast<std::size_t>(nodes_)) {
      throw ValidationError("torus quadrature grid too large");
    }
    count_ *= static_cast<std::size_t>(nodes_);
  }
  step_ = rs.angle_period() / nodes_;

  // The grid is a product, so exactness reduces to the one-dimensional rule:
  // the node sum of e^{ik theta} must vanish for 0 < k < M.
  for (int k = 1; k < nodes_; ++k) {
    Complex s = 0.0;
    for (int j = 0; j < nodes_; ++j) s += std::polar(1.0, 2.0 * std::numbers::pi * k * j / nodes_);
    if (std::abs(s) / nodes_ > 1e-12) throw InternalError("torus quadrature failed its monomial check");
  }
}

TorusQuadrature TorusQuadrature::for_bandwidth(const RootSystem& rs, int bandwidth) {
  return TorusQuadrature(rs, 2 * std::max(bandwidth, 0) + 3);
}

void TorusQuadrature::node(std::size_t index, std::span<double> thetas) const {
  for (int j = 0; j < rs_->rank(); ++j) {
    thetas[static_cast<std::size_t>(j)] = step_ * static_cast<double>(index % static_cast<std::size_t>(nodes_));
    index /= static_cast<std::size_t>(nodes_);
  }
}

double TorusQuadrature::integrate(const std::function<double(std::span<const double>)>& f, int threads) const {
  return chunked_sum<double>(count_, rs_->rank(), *this, f, threads) * weight();
}

Complex TorusQuadrature::integrate_complex(const std::function<Complex(std::span<const double>)>& f,
                                           int threads) const {
  return chunked_sum<Complex>(count_, rs_->rank(), *this, f, threads) * weight();
}

void TorusQuadrature::require_bandwidth(int frequency, const char* what) const {
  if (2 * frequency >= nodes_) {
    throw NumericalGuardError(std::string(what) + ": integrand frequency " + std::to_string(frequency) +
                              " needs at least " + std::to_string(2 * frequency + 1) + " nodes per angle, grid has " +
                              std::to_string(nodes_));
  }
}

int weight_frequency(const RootSystem& rs, const Weight& mu) {
  Int best = 0;
  for (Int c : mu.doubled()) best = std::max(best, c < 0 ? -c : c);
  // doubled coordinate * unit / 2
  return static_cast<int>((best * rs.angle_unit() + 1) / 2);
}

int character_bandwidth(const RootSystem& rs, const Weight& lambda) {
  int best = 0;
  for (const auto& e : rs.weyl_elements()) best = std::max(best, weight_frequency(rs, e.apply(lambda)));
  return best;
}

int expansion_bandwidth(const RootSystem& rs, const CharExpansion& e) {
  int best = 0;
  for (const auto& [lambda, c] : e.terms()) best = std::max(best, character_bandwidth(rs, lambda));
  return best;
}

int density_bandwidth(const RootSystem& rs) {
  int best = 0;
  for (int j = 0; j < rs.rank(); ++j) {
    Int s = 0;
    for (const auto& a : rs.positive_roots()) s += std::abs(a.doubled(j));
    best = std::max(best, static_cast<int>((s * rs.angle_unit() + 1) / 2));
  }
  return best;
}

GaussRule gauss_chebyshev_second_kind(int n) {
  if (n < 1) throw ValidationError("Gauss-Chebyshev rule needs n >= 1");
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const double angle = k * std::numbers::pi / (n + 1);
    const double s = std::sin(angle);
    rule.nodes[static_cast<std::size_t>(k - 1)] = std::cos(angle);
    rule.weights[static_cast<std::size_t>(k - 1)] = std::numbers::pi / (n + 1) * s * s;
  }
  return rule;
}

}  // namespace satolab
