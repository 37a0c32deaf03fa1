#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace specbound {

/// Counter-based generator: output i of stream s is a SplitMix64 finalizer
/// applied to (seed, s, i). Streams are independent of how work is split
/// across threads.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(mix(seed ^ mix(stream + 0x9E3779B97F4A7C15ULL))) {}

  result_type operator()() noexcept { return mix(key_ + 0x9E3779B97F4A7C15ULL * ++counter_); }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Uniformly distributed point on the unit sphere in R^n.
std::vector<double> random_unit_vector(CounterRng& rng, std::size_t n);

}  // namespace specbound
