#pragma once

#include <cstdlib>
#include <random>

#include "serre/rational.hpp"

namespace serre::testutil {

inline constexpr uint64_t kDefaultSeed = 0xC0EFFEEull;

inline uint64_t seed_from_env() {
  if (const char* s = std::getenv("REINHARDT_SEED")) return std::strtoull(s, nullptr, 0);
  return kDefaultSeed;
}

inline std::mt19937_64 rng() { return std::mt19937_64(seed_from_env()); }

inline long long rand_ll(std::mt19937_64& g, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(g);
}

// Small random rational with denominator in [1, max_den].
inline Rat rand_rat(std::mt19937_64& g, long long lo, long long hi, long long max_den = 8) {
  long long d = rand_ll(g, 1, max_den);
  long long n = rand_ll(g, lo * d, hi * d);
  return Rat(n, d);
}

inline double rand_unit(std::mt19937_64& g) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(g);
}

}  // namespace serre::testutil
