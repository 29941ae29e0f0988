#pragma once

#include <cstdint>
#include <optional>

#include "fatpoints/binary_form.hpp"
#include "fatpoints/divisor.hpp"

namespace fatpoints {

/// Z = m_1 P_1 + ... + m_n P_n at general points. Trailing zeros are allowed.
struct FatPointScheme {
  IntVector<std::int64_t> mult;

  FatPointScheme() : mult(0) {}
  explicit FatPointScheme(IntVector<std::int64_t> m);
  FatPointScheme(std::initializer_list<std::int64_t> m);

  Eigen::Index points() const { return mult.size(); }
  std::int64_t max_mult() const { return mult.size() == 0 ? 0 : mult.maxCoeff(); }

  friend bool operator==(const FatPointScheme& a, const FatPointScheme& b) {
    return a.mult.size() == b.mult.size() && a.mult == b.mult;
  }
};

struct SplittingType {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t gap() const { return b - a; }
  friend bool operator==(const SplittingType&, const SplittingType&) = default;
};

/// A candidate curve through its strict transform class, with whatever is known about it.
struct CurveData {
  DivisorClass cls;
  std::optional<SplittingType> split;
  std::optional<Parametrization> param;

  CurveData() = default;
  explicit CurveData(DivisorClass c, std::optional<SplittingType> s = std::nullopt)
      : cls(std::move(c)), split(s) {}
};

/// n(n-1)/2 for n >= 0, used throughout as C(n, 2).
constexpr std::int64_t binom2(std::int64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

/// Number of monomials of degree k in three variables, zero for k < 0.
constexpr std::int64_t monomial_count(std::int64_t k) { return k < 0 ? 0 : binom2(k + 2); }

std::int64_t length(const FatPointScheme& z);

/// max(0, C(k+2,2) - l(Z)). A prediction that is exact for quasi-uniform schemes under SHGH.
std::int64_t shgh_hilbert(const FatPointScheme& z, std::int64_t k);

/// h^1 recovered from h^0: h0 - C(k+2,2) + l(Z).
std::int64_t h1_from_h0(const FatPointScheme& z, std::int64_t k, std::int64_t h0);

struct ExpectedCokernel {
  std::int64_t dim = 0;
  bool exp_onto = false;  // 2 l(Z) <= k(k+2)
  bool exp_inj = false;   // 2 l(Z) >= k(k+2)
};

/// Expected cokernel dimension of mu_k, assuming h^1(I_Z(k)) = 0.
ExpectedCokernel exp_cok_mu(const FatPointScheme& z, std::int64_t k);

/// Length of Z intersected with C, from the single-point formula C(m+1,2) - C(max(m-r,0)+1,2).
std::int64_t intersection_length(const FatPointScheme& z, const CurveData& c);
std::int64_t intersection_length(const FatPointScheme& z, const DivisorClass& c);

/// Sum of r_i m_i.
std::int64_t strict_transform_pairing(const FatPointScheme& z, const CurveData& c);
std::int64_t strict_transform_pairing(const FatPointScheme& z, const DivisorClass& c);

struct ResidualScheme {
  FatPointScheme scheme;
  bool clamped = false;
};

/// Multiplicities max(m_i - h r_i, 0); `clamped` is set when any entry hit zero from below.
ResidualScheme residual(const FatPointScheme& z, const DivisorClass& c, std::int64_t h);
ResidualScheme residual(const FatPointScheme& z, const CurveData& c, std::int64_t h);

/// F_k(Z) = kL - sum m_i E_i.
DivisorClass linear_system_class(const FatPointScheme& z, std::int64_t k);

/// Least k with C(k+2,2) > l(Z): the SHGH-predicted initial degree.
std::int64_t predicted_alpha(const FatPointScheme& z);
/// Least k with C(k+2,2) >= l(Z): the SHGH-predicted regularity index.
std::int64_t predicted_tau(const FatPointScheme& z);

/// n >= 9 with m_1 = ... = m_9 maximal (after sorting descending).
bool is_quasi_uniform(const FatPointScheme& z);

}  // namespace fatpoints
