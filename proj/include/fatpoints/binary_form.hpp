#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fatpoints/prime_field.hpp"

namespace fatpoints {

/// Homogeneous form f = sum_j c[j] s^(d-j) t^j over F_p, coefficients in ascending powers of t.
/// The degree is the formal one (the coefficient vector has d+1 entries), so the zero form
/// still has a degree.
class BinaryForm {
 public:
  BinaryForm(PrimeField field, std::int64_t degree);
  BinaryForm(PrimeField field, std::vector<std::uint32_t> coeffs);

  /// s^(d-j) t^j.
  static BinaryForm monomial(PrimeField field, std::int64_t degree, std::int64_t j);

  std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }
  const PrimeField& field() const { return field_; }
  std::uint32_t coeff(std::int64_t j) const { return c_[static_cast<std::size_t>(j)]; }
  void set(std::int64_t j, std::uint32_t v) { c_[static_cast<std::size_t>(j)] = field_.from_int(v); }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }

  bool is_zero() const;
  /// Largest e with s^e dividing f; equals degree() for the zero form.
  std::int64_t s_valuation() const;
  std::uint32_t eval(std::uint32_t s, std::uint32_t t) const;

  BinaryForm operator+(const BinaryForm& o) const;
  BinaryForm operator-(const BinaryForm& o) const;
  BinaryForm operator*(const BinaryForm& o) const;
  BinaryForm scaled(std::uint32_t a) const;

  friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
    return a.field_ == b.field_ && a.c_ == b.c_;
  }

 private:
  PrimeField field_;
  std::vector<std::uint32_t> c_;
};

/// Greatest common divisor, normalized so the coefficient of its highest power of t is 1.
/// Its degree is the true degree of the gcd. Throws if both forms are zero.
BinaryForm gcd(const BinaryForm& a, const BinaryForm& b);
BinaryForm gcd(const std::vector<BinaryForm>& forms);

/// q with a = q * b; throws std::domain_error when b does not divide a.
BinaryForm exact_divide(const BinaryForm& a, const BinaryForm& b);

/// deg gcd(a, b) = deg a + deg b - rank of the Sylvester matrix (both forms nonzero).
std::int64_t sylvester_gcd_degree(const BinaryForm& a, const BinaryForm& b);

/// Normalization map P^1 -> P^2 given by three forms of one degree.
struct Parametrization {
  std::array<BinaryForm, 3> f;

  std::int64_t degree() const { return f[0].degree(); }
  const PrimeField& field() const { return f[0].field(); }
  std::array<std::uint32_t, 3> eval(std::uint32_t s, std::uint32_t t) const {
    return {f[0].eval(s, t), f[1].eval(s, t), f[2].eval(s, t)};
  }
};

/// Checks common degree >= 1, common field, not all zero and coprime; throws std::invalid_argument otherwise.
Parametrization make_parametrization(BinaryForm f0, BinaryForm f1, BinaryForm f2);

}  // namespace fatpoints
