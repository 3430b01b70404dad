#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace ch::rng {

// All randomness in the project flows through these helpers on top of
// std::mt19937_64, whose output sequence is fully specified by the standard.
// std::uniform_*_distribution is implementation-defined, so we avoid it to
// keep seeded runs bit-identical across toolchains.
using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed) { return Engine{seed}; }

// Unbiased integer in [0, n). Rejection sampling on the top of the 64-bit draw.
inline std::uint64_t uniform_index(Engine& eng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = eng();
  } while (x >= limit);
  return x % n;
}

// Uniform double in [0, 1) with 53 random mantissa bits.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform(Engine& eng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(eng);
}

// k distinct indices in [0, n), in ascending order. Partial Fisher-Yates.
inline std::vector<std::size_t> sample_without_replacement(Engine& eng,
                                                           std::size_t n,
                                                           std::size_t k) {
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(uniform_index(eng, n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace ch::rng
