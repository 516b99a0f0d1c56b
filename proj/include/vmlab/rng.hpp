#pragma once

#include <cstdint>
#include <random>

namespace vmlab {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Fixed mixing function for per-trial seeds: trials are independent and
/// reproducible regardless of how they are scheduled across workers.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 1));
}

/// mt19937_64 wrapper with distribution-free draws. The standard pins the
/// engine output exactly, while <random> distributions are implementation
/// defined, so all draws here go through the raw 64-bit stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  double unit() {  // [0,1) with 53 random bits
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return unit() < p; }

  /// Uniform in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace vmlab
