#pragma once

#include <cstdint>

// Counter-based deterministic randomness. Every stream is a pure function of
// (seed, counter), so independent substreams can be split off a master seed
// without sharing state. The mixer is the splitmix64 finalizer.

namespace otr {

// Statelessly derive a child seed from (seed, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Map a 64-bit word to the open interval (0, 1): ((x >> 11) + 0.5) * 2^-53.
double uniform01(std::uint64_t x);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() { return derive_seed(seed_, counter_++); }
  double next_uniform() { return uniform01(next_u64()); }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace otr
