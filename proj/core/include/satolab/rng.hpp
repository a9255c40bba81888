#pragma once

#include <array>
#include <cstdint>

namespace satolab {

/// Philox4x32-10 counter-based generator.
///
/// The 64-bit seed is the key; the upper half of the 128-bit counter holds a
/// substream index, so substream(seed, i) and substream(seed, j) never
/// overlap for i != j. Output is a deterministic function of
/// (seed, stream, draw index) on every platform.
class Philox4x32 {
 public:
  using result_type = std::uint64_t;

  explicit Philox4x32(std::uint64_t seed = 0, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t seed() const { return (static_cast<std::uint64_t>(key_[1]) << 32) | key_[0]; }
  std::uint64_t stream() const { return stream_; }

  /// One Philox4x32-10 block, exposed for known-answer tests.
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_{};
  std::uint64_t stream_ = 0;
  std::uint64_t block_index_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
};

/// Independent generator for work unit `index` under experiment seed `seed`.
inline Philox4x32 substream(std::uint64_t seed, std::uint64_t index) { return Philox4x32(seed, index); }

}  // namespace satolab
