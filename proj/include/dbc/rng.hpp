#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace dbc {

// Deterministic randomness source. Protocol operations never reach for
// hidden global state; they take an Rng (or an explicit nonce) as a
// parameter. Two Rng instances with the same seed produce the same stream on
// every platform: mt19937_64 is fully specified by the standard, and the
// uniform draw below avoids std::uniform_int_distribution, which is not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform draw from [0, n) by rejection; exact, no modulo bias.
  std::uint64_t uniform_below(std::uint64_t n) {
    if (n <= 1) {
      return 0;
    }
    const std::uint64_t rem = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t x = engine_();
      if (x <= ~rem) {  // x < 2^64 - rem, i.e. inside the unbiased range
        return x % n;
      }
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Stable sub-stream seed for a named component (simulator parties, join
// workers). FNV-1a over the label, mixed with the base seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view label) {
  std::uint64_t h = 14695981039346656037ull ^ (base * 0x9E3779B97F4A7C15ull);
  for (unsigned char c : label) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace dbc
