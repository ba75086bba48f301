#include "spincert/rng.hpp"

namespace spincert {

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) {
  SplitMix64 sm{base};
  std::uint64_t x = sm.next();
  for (std::uint64_t p : path) {
    SplitMix64 step{x ^ (0x9E3779B97F4A7C15ULL * (p + 1))};
    x = step.next();
  }
  return x;
}

}  // namespace spincert
