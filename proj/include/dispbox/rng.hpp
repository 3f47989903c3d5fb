#pragma once

#include <cstdint>
#include <random>

namespace dispbox {

/// Seeded generator used everywhere randomness is needed. The engine is
/// std::mt19937_64, whose output sequence the C++ standard pins down exactly,
/// and the mappings below are fixed here, so a (generator, seed) pair
/// reproduces bit-identically on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform on [0,1) with 53 random mantissa bits.
  double next_unit() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // Uniform on {0,...,n-1} by rejection (exactly uniform).
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace dispbox
