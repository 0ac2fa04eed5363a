#pragma once

#include <cstdint>

namespace luba {

struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next();
};

/// xoshiro256++ with independent streams derived from (seed, stream index).
/// Stream derivation is counter-based, so per-trial generators do not depend
/// on how many draws earlier trials consumed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  double uniform01();  // [0, 1), 53-bit resolution
  std::uint64_t uniform_below(std::uint64_t bound);
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);  // inclusive

 private:
  std::uint64_t s_[4];
};

/// Poisson sample: sequential inversion for lambda < 10, PTRS transformed
/// rejection above. The algorithm split is fixed so seeded runs reproduce.
std::int64_t sample_poisson(Rng& rng, double lambda);

}  // namespace luba
