#pragma once

#include <cstdint>
#include <stdexcept>

namespace fatpoints {

/// 2^31 - 1. Default modulus for every exact computation.
inline constexpr std::uint32_t kMersenne31 = 2147483647u;

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Arithmetic in Z/pZ for a prime p < 2^32. Elements are residues in [0, p).
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p = kMersenne31);

  std::uint32_t modulus() const { return p_; }
  bool is_mersenne31() const { return p_ == kMersenne31; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t{a} + p_ - b);
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p_);
  }
  std::uint32_t pow(std::uint32_t base, std::uint64_t e) const;
  /// Inverse of a nonzero element; throws std::domain_error on zero.
  std::uint32_t inv(std::uint32_t a) const;

  /// Reduce a signed integer into [0, p).
  std::uint32_t from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

}  // namespace fatpoints
