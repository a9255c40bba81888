#include "satolab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parallel.hpp"
#include "satolab/error.hpp"

namespace satolab {

namespace {

constexpr std::size_t kChunk = 2048;

// Sums fn(node, out) over the grid into `width` complex accumulators,
// chunk by chunk in a fixed order so the result does not depend on threads.
template <typename Fn>
std::vector<Complex> accumulate_nodes(const TorusQuadrature& q, int width, int threads, const Fn& fn) {
  const std::size_t count = q.node_count();
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  const auto w = static_cast<std::size_t>(width);
  std::vector<CompensatedSum<Complex>> partial(chunks * w);
  const int rank = q.root_system().rank();
  detail::parallel_blocks(chunks, threads, [&](std::size_t c) {
    std::vector<double> thetas(static_cast<std::size_t>(rank));
    std::vector<Complex> out(w);
    const std::size_t end = std::min(count, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      q.node(i, thetas);
      std::fill(out.begin(), out.end(), Complex(0.0));
      fn(std::span<const double>(thetas), std::span<Complex>(out));
      for (std::size_t k = 0; k < w; ++k) partial[c * w + k].add(out[k]);
    }
  });
  std::vector<Complex> result(w);
  for (std::size_t k = 0; k < w; ++k) {
    CompensatedSum<Complex> total;
    for (std::size_t c = 0; c < chunks; ++c) total.add(partial[c * w + k]);
    result[k] = total.value() * q.weight();
  }
  return result;
}

void spot_check_invariance(const RootSystem& rs, const TorusFunction& f, const char* what) {
  // A few fixed irrational-looking points and every simple reflection.
  static constexpr double kProbe[] = {0.7137, 1.9021, 2.6180, 0.3090, 4.1231, 5.4772};
  std::vector<double> thetas(static_cast<std::size_t>(rs.rank()));
  for (int trial = 0; trial < 2; ++trial) {
    for (int j = 0; j < rs.rank(); ++j) thetas[static_cast<std::size_t>(j)] = kProbe[(trial * 3 + j) % 6] + 0.37 * j;
    const Complex base = f(thetas);
    for (std::size_t g = 1; g <= static_cast<std::size_t>(rs.rank()) && g < rs.weyl_order(); ++g) {
      const auto moved = rs.weyl_elements()[g].act_on_angles(thetas);
      if (std::abs(f(moved) - base) > 1e-8 * (1.0 + std::abs(base))) {
        throw ValidationError(std::string(what) + ": integrand is not Weyl-invariant");
      }
    }
  }
}

}  // namespace

double st_density(const RootSystem& rs, std::span<const double> thetas) {
  double p = 1.0;
  for (const auto& a : rs.positive_roots()) p *= 2.0 - 2.0 * std::cos(phase(a, thetas));
  return p;
}

double plancherel_density(const RootSystem& rs, Int p, std::span<const double> thetas) {
  if (p < 2) throw ValidationError("Plancherel density needs p >= 2, got " + std::to_string(p));
  const double q = 1.0 / static_cast<double>(p);
  double v = 1.0;
  for (const auto& a : rs.positive_roots()) {
    const double c = std::cos(phase(a, thetas));
    // (1 - e^{ia})(1 - e^{-ia}) / ((1 - q e^{ia})(1 - q e^{-ia}))
    v *= (2.0 - 2.0 * c) / (1.0 - 2.0 * q * c + q * q);
  }
  return v;
}

MeasureDensity::MeasureDensity(const RootSystem& rs, MeasureKind kind, Int prime)
    : rs_(&rs), kind_(kind), prime_(prime) {
  for (const auto& a : rs.positive_roots()) {
    for (int j = 0; j < rs.rank(); ++j) roots_.push_back(a.coord(j));
  }
  if (kind == MeasureKind::plancherel) inv_p_ = 1.0 / static_cast<double>(prime);
}

MeasureDensity MeasureDensity::sato_tate(const RootSystem& rs) { return MeasureDensity(rs, MeasureKind::sato_tate, 0); }

MeasureDensity MeasureDensity::plancherel(const RootSystem& rs, Int p) {
  if (p < 2) throw ValidationError("Plancherel density needs p >= 2, got " + std::to_string(p));
  return MeasureDensity(rs, MeasureKind::plancherel, p);
}

double MeasureDensity::unnormalized(std::span<const double> thetas) const {
  const int rank = rs_->rank();
  const double* root = roots_.data();
  const std::size_t count = roots_.size() / static_cast<std::size_t>(rank);
  double v = 1.0;
  if (kind_ == MeasureKind::sato_tate) {
    for (std::size_t k = 0; k < count; ++k, root += rank) {
      double ph = 0.0;
      for (int j = 0; j < rank; ++j) ph += root[j] * thetas[static_cast<std::size_t>(j)];
      v *= 2.0 - 2.0 * std::cos(ph);
    }
  } else {
    const double q = inv_p_;
    const double q2 = 1.0 + q * q;
    for (std::size_t k = 0; k < count; ++k, root += rank) {
      double ph = 0.0;
      for (int j = 0; j < rank; ++j) ph += root[j] * thetas[static_cast<std::size_t>(j)];
      const double c = std::cos(ph);
      v *= (2.0 - 2.0 * c) / (q2 - 2.0 * q * c);
    }
  }
  return v;
}

MeasureDensity MeasureDensity::with_normalization(double normalization) const {
  if (!(normalization > 0.0) || !std::isfinite(normalization)) {
    throw NumericalGuardError("density normalization must be a positive finite number");
  }
  MeasureDensity d = *this;
  d.normalization_ = normalization;
  d.normalized_ = true;
  return d;
}

MeasureDensity normalize(const MeasureDensity& d, const TorusQuadrature& q, int threads) {
  const RootSystem& rs = d.root_system();
  auto total = [&](const TorusQuadrature& grid) {
    return grid.integrate([&](std::span<const double> th) { return d.unnormalized(th); }, threads);
  };
  if (d.kind() == MeasureKind::sato_tate) {
    q.require_bandwidth(density_bandwidth(rs), "Sato-Tate normalization");
    const double z = total(q);
    const double order = static_cast<double>(rs.weyl_order());
    if (std::abs(z - order) > 1e-9 * order) {
      throw InternalError("Weyl integration identity failed: integral of |delta|^2 is " + std::to_string(z));
    }
    return d.with_normalization(1.0 / z);
  }

  int nodes = std::max(q.nodes_per_dim(), 2 * density_bandwidth(rs) + 3);
  double previous = total(TorusQuadrature(rs, nodes));
  for (int round = 0; round < 8; ++round) {
    nodes = 2 * nodes + 1;
    const double current = total(TorusQuadrature(rs, nodes));
    if (std::abs(current - previous) <= kPlancherelAgreement * std::abs(current)) {
      return d.with_normalization(1.0 / current);
    }
    previous = current;
  }
  throw NumericalGuardError("Plancherel normalization did not converge under grid doubling");
}

Complex inner_product(const RootSystem& rs, const TorusQuadrature& q, const TorusFunction& f, const TorusFunction& g,
                      int threads) {
  spot_check_invariance(rs, f, "inner_product");
  spot_check_invariance(rs, g, "inner_product");
  const double inv_order = 1.0 / static_cast<double>(rs.weyl_order());
  const auto sums = accumulate_nodes(q, 1, threads, [&](std::span<const double> th, std::span<Complex> out) {
    out[0] = f(th) * std::conj(g(th)) * (st_density(rs, th) * inv_order);
  });
  return sums[0];
}

Complex inner_product(const RootSystem& rs, const TorusQuadrature& q, const CharExpansion& f, const CharExpansion& g,
                      int threads) {
  validate_expansion(rs, f);
  validate_expansion(rs, g);
  q.require_bandwidth(expansion_bandwidth(rs, f) + expansion_bandwidth(rs, g) + density_bandwidth(rs),
                      "inner_product");
  const double inv_order = 1.0 / static_cast<double>(rs.weyl_order());
  const auto sums = accumulate_nodes(q, 1, threads, [&](std::span<const double> th, std::span<Complex> out) {
    const TorusPoint t(std::vector<double>(th.begin(), th.end()), rs.angle_period());
    out[0] = evaluate(rs, f, t) * std::conj(evaluate(rs, g, t)) * (st_density(rs, th) * inv_order);
  });
  return sums[0];
}

std::vector<std::vector<Complex>> gram_matrix(const RootSystem& rs, const TorusQuadrature& q,
                                              std::span<const Weight> weights, int threads) {
  int bandwidth = 0;
  for (const auto& w : weights) {
    rs.require_weight(w, true, "gram_matrix");
    bandwidth = std::max(bandwidth, character_bandwidth(rs, w));
  }
  q.require_bandwidth(2 * bandwidth + density_bandwidth(rs), "gram_matrix");
  const int n = static_cast<int>(weights.size());
  const double inv_order = 1.0 / static_cast<double>(rs.weyl_order());
  const auto sums = accumulate_nodes(q, n * n, threads, [&](std::span<const double> th, std::span<Complex> out) {
    const TorusPoint t(std::vector<double>(th.begin(), th.end()), rs.angle_period());
    std::vector<Complex> chi(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) chi[static_cast<std::size_t>(i)] = char_value(rs, weights[static_cast<std::size_t>(i)], t);
    const double mu = st_density(rs, th) * inv_order;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        out[static_cast<std::size_t>(i * n + j)] = chi[static_cast<std::size_t>(i)] * std::conj(chi[static_cast<std::size_t>(j)]) * mu;
      }
    }
  });
  std::vector<std::vector<Complex>> g(static_cast<std::size_t>(n), std::vector<Complex>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = sums[static_cast<std::size_t>(i * n + j)];
  }
  return g;
}

CharacterMoments character_moments(const RootSystem& rs, const TorusQuadrature& q, const CharExpansion& e,
                                   int threads) {
  if (e.empty()) throw ValidationError("character_moments needs a nonempty expansion");
  validate_expansion(rs, e);
  q.require_bandwidth(2 * expansion_bandwidth(rs, e) + density_bandwidth(rs), "character_moments");
  const double inv_order = 1.0 / static_cast<double>(rs.weyl_order());
  const auto s = accumulate_nodes(q, 5, threads, [&](std::span<const double> th, std::span<Complex> out) {
    const TorusPoint t(std::vector<double>(th.begin(), th.end()), rs.angle_period());
    const Complex h = evaluate(rs, e, t);
    const double mu = st_density(rs, th) * inv_order;
    out[0] = h * mu;
    out[1] = std::norm(h) * mu;
    out[2] = h.real() * h.real() * mu;
    out[3] = h.imag() * h.imag() * mu;
    out[4] = h * h * mu;
  });
  CharacterMoments m;
  m.first = s[0];
  m.second = s[1].real();
  m.re_sq = s[2].real();
  m.im_sq = s[3].real();
  m.square_no_conj = s[4];
  return m;
}

Complex integrate_against(const MeasureDensity& d, const TorusQuadrature& q, const TorusFunction& f, int threads) {
  if (!d.normalized()) throw ValidationError("integrate_against needs a normalized density");
  const auto s = accumulate_nodes(q, 1, threads,
                                  [&](std::span<const double> th, std::span<Complex> out) { out[0] = f(th) * d(th); });
  return s[0];
}

}  // namespace satolab
