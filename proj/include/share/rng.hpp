#pragma once

#include <cstdint>
#include <random>

namespace share {

/// splitmix64 finalizer; the fixed per-replication seed-splitting rule.
inline std::uint64_t split_seed(std::uint64_t master_seed, std::uint64_t replication) {
  std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (replication + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::mt19937_64 replication_rng(std::uint64_t master_seed, std::uint64_t replication) {
  return std::mt19937_64(split_seed(master_seed, replication));
}

}  // namespace share
