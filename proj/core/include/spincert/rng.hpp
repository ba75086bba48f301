#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace spincert {

// Deterministic, platform-independent random numbers.
//
// Engine: xoshiro256++ 1.0 (Blackman & Vigna), seeded through SplitMix64
// (Steele, Lea & Flood) exactly as the reference implementation recommends.
// Distributions are hand-rolled on top of the raw 64-bit stream (std::*
// distributions are implementation-defined and would break the
// reproducibility contract). Derived streams for independent tasks come from
// `derive_seed`, which hashes a base seed together with an index path, so
// multi-start searches, per-resample bootstraps, etc. each own a private
// stream that never overlaps by construction.

struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

// Hash (base, path...) into a single 64-bit stream seed.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path);

class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    SplitMix64 sm{seed};
    for (auto& w : s_) w = sm.next();
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) with 53 random mantissa bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> s_;
};

// One categorical draw against a cumulative distribution (cdf[d-1] must be
// the total mass; the last bin absorbs any rounding slack).
inline int sample_cdf(Xoshiro256pp& rng, const double* cdf, int d) {
  const double u = rng.uniform();
  int i = 0;
  while (i < d - 1 && cdf[i] <= u) ++i;
  return i;
}

}  // namespace spincert
