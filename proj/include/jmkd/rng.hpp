// Deterministic 64-bit splitmix generator.  Seeded runs must reproduce the
// exact same sample points across platforms, so the double mapping is spelled
// out rather than delegated to std::uniform_real_distribution.
#pragma once

#include <cstdint>

namespace jmkd {

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    std::uint64_t next_below(std::uint64_t n) { return n ? next_u64() % n : 0; }

  private:
    std::uint64_t state_;
};

}  // namespace jmkd
