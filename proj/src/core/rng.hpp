#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace cpsres {

// SplitMix64-style mixing; derives independent stream seeds from a base
// seed and a counter without advancing any shared state.
inline uint64_t mix_seed(uint64_t base, uint64_t index) {
  uint64_t z = base + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic stream with explicitly pinned draw primitives, so identical
// seeds reproduce identical trajectories across platforms and library
// versions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t bits() { return eng_(); }

  // 53-bit mantissa uniform in [0,1)
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double prob) { return uniform() < prob; }

  // uniform in [0,n); the modulo bias at our n is far below any tolerance
  uint64_t below(uint64_t n) { return eng_() % n; }

 private:
  std::mt19937_64 eng_;
};

template <typename T>
void shuffle_in_place(std::vector<T>& values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i)
    std::swap(values[i - 1], values[rng.below(i)]);
}

}  // namespace cpsres
