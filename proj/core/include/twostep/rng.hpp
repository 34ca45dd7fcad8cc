#pragma once

// Randomness contract: every stochastic operation takes either an explicit
// uniform draw in [0,1) or a RoundRng seeded from (master_seed, round index).
// Identical seeds give identical outcomes on every platform, so logs and
// summaries are reproducible bit for bit.

#include <cstdint>
#include <random>

namespace twostep {

/// Per-round seed: the round_index-th output of the splitmix64 stream whose
/// state starts at master_seed. Written out here so other implementations
/// can reproduce round logs from (master_seed, index) alone.
inline std::uint64_t round_seed(std::uint64_t master_seed,
                                std::uint64_t round_index) {
  std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (round_index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Deterministic per-round generator. The engine is mt19937_64 (fully
/// specified by the standard); draws avoid std::uniform_real_distribution,
/// whose algorithm is implementation-defined.
class RoundRng {
 public:
  explicit RoundRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  int next_bit() { return static_cast<int>(engine_() & 1u); }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace twostep
