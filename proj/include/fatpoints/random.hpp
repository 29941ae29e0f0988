#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fatpoints/prime_field.hpp"

namespace fatpoints {

/// Master seed used when neither the caller nor FATPOINTS_SEED provides one.
inline constexpr std::uint64_t kDefaultMasterSeed = 0x5eedf4790117ull;

/// Reads FATPOINTS_SEED (decimal or 0x-prefixed hex); falls back to kDefaultMasterSeed.
std::uint64_t master_seed_from_env();

/// `count` well-mixed seeds derived from one master seed by splitmix64.
std::vector<std::uint64_t> derive_seeds(std::uint64_t master, std::size_t count);

/// Uniform residues from a seeded Mersenne twister. Deterministic per seed.
class FieldSampler {
 public:
  FieldSampler(PrimeField field, std::uint64_t seed) : field_(field), gen_(seed) {}

  std::uint32_t uniform() { return static_cast<std::uint32_t>(dist(0)(gen_)); }
  std::uint32_t nonzero() { return static_cast<std::uint32_t>(dist(1)(gen_)); }
  std::uint64_t next_seed() { return gen_(); }
  const PrimeField& field() const { return field_; }

 private:
  std::uniform_int_distribution<std::uint64_t> dist(std::uint64_t lo) const {
    return std::uniform_int_distribution<std::uint64_t>(lo, field_.modulus() - 1);
  }

  PrimeField field_;
  std::mt19937_64 gen_;
};

}  // namespace fatpoints
