#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "forge/field.hpp"

namespace forge {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// FNV-1a; stable across platforms, unlike std::hash.
inline std::uint64_t stable_hash(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

/// Seeded mt19937_64 with named sub-streams. A stream derived with
/// split("stage") depends only on the parent seed and the name, never on how
/// much the parent has been used, so stages can be reordered or run
/// concurrently without changing their draws.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  std::uint64_t seed() const { return seed_; }

  Rng split(std::string_view name) const { return Rng(splitmix64(seed_ ^ stable_hash(name))); }
  Rng split(std::string_view name, std::uint64_t index) const {
    return Rng(splitmix64(splitmix64(seed_ ^ stable_hash(name)) + index));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n) by rejection, so results do not depend on the
  /// standard library's distribution implementation.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % n;
  }

  std::uint32_t residue(const PrimeField &f) { return static_cast<std::uint32_t>(below(f.prime())); }
  std::uint32_t nonzero_residue(const PrimeField &f) { return static_cast<std::uint32_t>(1 + below(f.prime() - 1)); }

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace forge
