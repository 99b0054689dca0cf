#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace evencycle {

// Reproducible randomness: std::mt19937_64 (output sequence fixed by the C++
// standard) seeded with the 64-bit seed, with the integer and real mappings
// below spelled out instead of left to the standard distributions, whose
// output differs between standard libraries.
//   uniform_below(n): draw x, reject while x >= 2^64 - (2^64 mod n), return x mod n
//   unit():           (x >> 11) * 2^-53
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  std::uint64_t uniform_below(std::uint64_t n) {
    constexpr std::uint64_t max = ~std::uint64_t{0};
    const std::uint64_t r = (max % n + 1) % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t x = next();
      if (x <= max - r) return x % n;
    }
  }

  double unit() { return double(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

  // k distinct values from 0..n-1, in draw order (partial Fisher-Yates).
  std::vector<std::uint64_t> sample(std::uint64_t n, std::uint64_t k) {
    std::vector<std::uint64_t> pool(n);
    for (std::uint64_t i = 0; i < n; ++i) pool[i] = i;
    for (std::uint64_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + uniform_below(n - i)]);
    pool.resize(k);
    return pool;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace evencycle
