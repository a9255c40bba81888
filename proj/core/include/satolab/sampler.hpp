#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "satolab/characters.hpp"
#include "satolab/measures.hpp"
#include "satolab/rng.hpp"

namespace satolab {

inline constexpr double kEnvelopeSafety = 1.05;

/// Rejection sampler on the torus with uniform proposals.
///
/// The envelope is 1.05 times the density's supremum, estimated on a grid
/// and polished by a local compass search. A proposal whose density exceeds
/// the envelope raises NumericalGuardError.
class TorusSampler {
 public:
  explicit TorusSampler(MeasureDensity density);

  const MeasureDensity& density() const { return density_; }
  double envelope() const { return envelope_; }
  double estimated_sup() const { return sup_; }

  /// Writes one accepted draw into `thetas` (length = rank).
  void draw(Philox4x32& rng, std::span<double> thetas) const;

 private:
  MeasureDensity density_;
  double period_;
  double sup_;
  double envelope_;
};

/// Grid estimate of sup(density), refined locally.
double estimate_supremum(const MeasureDensity& density);

/// n i.i.d. draws. Draws are produced in fixed blocks, each with its own
/// substream of `seed`, so the output does not depend on `threads`.
std::vector<TorusPoint> sample(const MeasureDensity& density, std::uint64_t seed, std::size_t n, int threads = 1);

/// Block size used by sample(); block b draws from substream(seed, b).
inline constexpr std::size_t kSampleBlock = 4096;

}  // namespace satolab
