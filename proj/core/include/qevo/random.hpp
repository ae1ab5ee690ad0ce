#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>

namespace qevo {

/// SplitMix64 finalizer. Bijective 64-bit mixing function.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Folds a list of words (seed, agent id, episode, ...) into one stream key.
std::uint64_t derive_stream_key(std::initializer_list<std::uint64_t> words) noexcept;

/// Counter-based random stream: the k-th draw is splitmix64_mix(key + k * golden),
/// i.e. plain SplitMix64 started at `key`. Draw k depends only on (key, k), so streams
/// reproduce bit-for-bit across platforms and thread schedules.
///
/// Normal variates use the Box-Muller transform; both outputs of a pair are consumed.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  std::uint64_t next_u64() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Uniform integer on [0, n). n must be positive.
  std::size_t below(std::size_t n) noexcept;

  /// Standard normal variate.
  double normal() noexcept;

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t draws() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace qevo
