#pragma once

#include <cstdint>
#include <utility>

namespace mubqpd {

/// Counter-based 64-bit generator: output k is the splitmix64 finaliser
/// applied to `key + (k + 1) * 0x9E3779B97F4A7C15`. The stream is fully
/// determined by (key, counter), so it is reproducible in any language.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  std::uint64_t next_u64() noexcept;
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Two independent standard normals (Box-Muller).
  std::pair<double, double> gaussian_pair() noexcept;

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept;

/// Key for an independent sub-stream (per sample, per basis, ...).
std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace mubqpd
