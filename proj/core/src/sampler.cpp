#include "satolab/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"
#include "satolab/error.hpp"
#include "satolab/quadrature.hpp"

namespace satolab {

double estimate_supremum(const MeasureDensity& density) {
  const RootSystem& rs = density.root_system();
  const int rank = rs.rank();
  // Resolve the density's oscillation, within a bounded node budget.
  const double budget = 4e5;
  int nodes = 8 * density_bandwidth(rs) + 1;
  nodes = std::min(nodes, static_cast<int>(std::floor(std::pow(budget, 1.0 / rank))));
  nodes = std::max(nodes, 9);
  if (nodes % 2 == 0) ++nodes;
  const TorusQuadrature grid(rs, nodes);

  constexpr std::size_t kSeeds = 16;
  std::vector<std::pair<double, std::size_t>> best;
  std::vector<double> th(static_cast<std::size_t>(rank));
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    grid.node(i, th);
    const double v = density.unnormalized(th);
    if (best.size() < kSeeds) {
      best.emplace_back(v, i);
      std::push_heap(best.begin(), best.end(), std::greater<>());
    } else if (v > best.front().first) {
      std::pop_heap(best.begin(), best.end(), std::greater<>());
      best.back() = {v, i};
      std::push_heap(best.begin(), best.end(), std::greater<>());
    }
  }

  double sup = 0.0;
  const double start_step = rs.angle_period() / nodes;
  for (const auto& [value, index] : best) {
    grid.node(index, th);
    double cur = value;
    double step = start_step;
    while (step > 1e-7) {
      bool moved = false;
      for (int j = 0; j < rank && !moved; ++j) {
        for (double dir : {1.0, -1.0}) {
          th[static_cast<std::size_t>(j)] += dir * step;
          const double v = density.unnormalized(th);
          if (v > cur) {
            cur = v;
            moved = true;
            break;
          }
          th[static_cast<std::size_t>(j)] -= dir * step;
        }
      }
      if (!moved) step *= 0.5;
    }
    sup = std::max(sup, cur);
  }
  return sup * density.normalization();
}

TorusSampler::TorusSampler(MeasureDensity density)
    : density_(std::move(density)), period_(density_.root_system().angle_period()) {
  if (!density_.normalized()) throw ValidationError("sampler needs a normalized density");
  sup_ = estimate_supremum(density_);
  envelope_ = kEnvelopeSafety * sup_;
}

void TorusSampler::draw(Philox4x32& rng, std::span<double> thetas) const {
  for (;;) {
    for (auto& t : thetas) t = period_ * rng.uniform01();
    const double v = density_(thetas);
    if (v > envelope_) {
      throw NumericalGuardError("rejection envelope violated: density " + std::to_string(v) + " above envelope " +
                                std::to_string(envelope_));
    }
    if (rng.uniform01() * envelope_ < v) return;
  }
}

std::vector<TorusPoint> sample(const MeasureDensity& density, std::uint64_t seed, std::size_t n, int threads) {
  if (n < 1) throw ValidationError("sample needs n >= 1");
  const TorusSampler sampler(density);
  const int rank = density.root_system().rank();
  const double period = density.root_system().angle_period();
  std::vector<TorusPoint> out(n);
  const std::size_t blocks = (n + kSampleBlock - 1) / kSampleBlock;
  detail::parallel_blocks(blocks, threads, [&](std::size_t b) {
    std::vector<double> th(static_cast<std::size_t>(rank));
    auto rng = substream(seed, b);
    const std::size_t end = std::min(n, (b + 1) * kSampleBlock);
    for (std::size_t i = b * kSampleBlock; i < end; ++i) {
      sampler.draw(rng, th);
      out[i] = TorusPoint(th, period);
    }
  });
  return out;
}

}  // namespace satolab
