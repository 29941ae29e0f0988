#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fatpoints/fat_points.hpp"
#include "fatpoints/rational_curve.hpp"

namespace fatpoints {

/// h^0 of the twisted cotangent bundle restricted to a rational curve of degree d:
/// (t-1)(t+1) for 1 <= t <= d-2 and d(2t-d) for t >= d-1. Throws for t <= 0.
std::int64_t h0_omega_restricted(std::int64_t d, std::int64_t t);

struct GammaReport {
  std::int64_t value = 0;
  std::int64_t intersection_length = 0;
  std::int64_t h0_omega = 0;
  /// k + 2 >= d.
  bool degree_ok = false;
  /// r_i <= m_i + 1 for every i, so the length has the closed form sum r_i m_i - C(r_i, 2).
  bool multiplicity_ok = false;
};

/// max(0, 2 l(Z intersect C) - h^0(Omega(k+1)|_C)).
GammaReport gamma_report(const DivisorClass& c, const FatPointScheme& z, std::int64_t k);
std::int64_t gamma(const DivisorClass& c, const FatPointScheme& z, std::int64_t k);

/// sum r_i m_i - d k, which is -F_k(Z).C.
std::int64_t excess(const DivisorClass& c, const FatPointScheme& z, std::int64_t k);

/// max(0, X + a - 1) + max(0, X + b - 1) with X = excess(C, Z, k).
std::int64_t delta0(const DivisorClass& c, const SplittingType& split, const FatPointScheme& z, std::int64_t k);
/// Throws std::invalid_argument when the curve has no splitting type.
std::int64_t delta0(const CurveData& c, const FatPointScheme& z, std::int64_t k);

/// delta0 over every splitting type allowed by the bounds for the curve's largest
/// multiplicity. It is nonincreasing in a, so lo uses the largest admissible a and hi the smallest.
struct Delta0Range {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  bool determined = false;
  bool needs_construction() const { return lo != hi; }
};
Delta0Range delta0_range(const DivisorClass& c, const FatPointScheme& z, std::int64_t k);

struct DeltaReport {
  /// Indexed by h = 0 .. floor(t/d); terms with t - h d < 1 are zero.
  std::vector<std::int64_t> delta_h;
  std::vector<std::int64_t> a_h;
  std::vector<std::int64_t> b_h;
  std::vector<bool> clamped;
  std::int64_t total = 0;
  std::int64_t delta0() const { return delta_h.empty() ? 0 : delta_h.front(); }
  /// 1 + the largest h with delta_h > 0, or 0 when all terms vanish.
  std::int64_t effective_multiplicity() const;
};

/// Iterated residual terms delta_h = delta0(C, res_{C,h} Z, t - h d) and A_h, B_h.
/// Throws std::logic_error if delta_h != max(0, A_h) + max(0, B_h) on an unclamped term.
DeltaReport delta(const DivisorClass& c, const SplittingType& split, const FatPointScheme& z, std::int64_t t);

struct RecursiveCheck {
  std::int64_t lhs = 0;  // sum_{h <= p} delta_h
  std::int64_t rhs = 0;  // gamma((p+1) C, Z, t)
  bool applicable = false;
  bool equal = false;
  std::vector<std::string> failed_preconditions;
};

/// Compares sum_{h=0..p} delta_h(C, Z, t) with gamma((p+1)C, Z, t), reporting preconditions.
RecursiveCheck check_recursive(const DivisorClass& c, const SplittingType& split, const FatPointScheme& z,
                               std::int64_t t, std::int64_t p);

}  // namespace fatpoints
