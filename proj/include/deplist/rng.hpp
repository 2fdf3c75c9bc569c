#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace deplist {

/// Seeded generator with unbiased bounded sampling. All workload and sweep
/// randomness flows through this type so replays are reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    // rejection sampling: accept x >= 2^64 mod bound
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t x = eng_();
      if (x >= threshold) return x % bound;
    }
  }

  int index(std::size_t size) { return static_cast<int>(below(static_cast<std::uint64_t>(size))); }

  int bit() { return static_cast<int>(eng_() & 1u); }

  bool chance(double p) { return unit() < p; }

  /// Uniform in [0, 1).
  double unit() {
    return static_cast<double>(eng_() >> 11) * (1.0 / 9007199254740992.0);  // 53-bit mantissa
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace deplist
