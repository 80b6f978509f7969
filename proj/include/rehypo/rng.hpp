#pragma once

// Deterministic random sampling. Everything reproducible from a single u64
// seed: the generator is std::mt19937_64 (bit-exact per the standard), and
// all distribution sampling is done by hand below because the std::*
// distribution classes are implementation-defined and would break
// seed-for-seed reproducibility across standard libraries.
//
// Sub-experiments never share a generator; they derive independent child
// seeds with split_seed, which hashes (seed, index) through SplitMix64.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace rehypo {

// SplitMix64 step (Steele, Lea, Flood 2014). Used as a seed mixer.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Child seed for sub-experiment `index` of a run seeded with `seed`.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed;
  std::uint64_t a = splitmix64(state);
  state ^= index * 0xda942042e4dd58b5ull;
  std::uint64_t b = splitmix64(state);
  return a ^ (b + 0x9e3779b97f4a7c15ull);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1) with 53 random bits, the usual mantissa construction.
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound) by rejection, no modulo bias.
  std::uint64_t uniform_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = gen_();
      if (r >= threshold) return r % bound;
    }
  }

  bool bernoulli(double p) { return uniform01() < p; }

  // First k entries of a partial Fisher-Yates shuffle of 0..n-1. For a fixed
  // generator state the result for k is a prefix of the result for k+1, which
  // downstream monotonicity checks rely on.
  std::vector<int> sample_without_replacement(int n, int k) {
    if (n < 0 || k < 0 || k > n)
      throw std::invalid_argument("sample_without_replacement: need 0 <= k <= n");
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < k; ++i) {
      const int j = i + static_cast<int>(uniform_below(static_cast<std::uint64_t>(n - i)));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace rehypo
