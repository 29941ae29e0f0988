#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fatpoints/divisor.hpp"
#include "fatpoints/fat_points.hpp"

namespace fatpoints {

class EnumerationBudgetExceeded : public std::runtime_error {
 public:
  EnumerationBudgetExceeded(std::uint64_t nodes, std::int64_t degree_reached);
  std::uint64_t nodes;
  std::int64_t degree_reached;
};

/// Which candidates may matter for a verdict. Filters only drop classes whose delta0 vanishes
/// for every splitting type with a + b = d, resp. whose delta_h vanish for every h that can be
/// counted, i.e. with (h+1) C still inside d <= k+2 and r_i <= m_i+1.
enum class PositivityFilter { none, delta0, delta };

struct EnumerationOptions {
  std::int64_t dmax = 1;
  /// Degree of the linear system, used by the positivity filters.
  std::int64_t k = 0;
  PositivityFilter positivity = PositivityFilter::none;
  /// Keep only classes whose Cremona reduction reaches a line or conic.
  bool require_plausible = true;
  std::uint64_t node_budget = 200'000'000;
};

/// Classes (d; r_1..r_n) with 1 <= d <= dmax, 0 <= r_i <= m_i + 1, arithmetic genus 0 and
/// C^2 >= -1. Points of equal multiplicity are interchangeable, so each class is listed once
/// with r nonincreasing along every run of equal m_i (in positional order).
std::vector<DivisorClass> enumerate_candidates(const FatPointScheme& z, const EnumerationOptions& opts);

/// All distinct classes obtained by permuting r among points of equal multiplicity.
std::vector<DivisorClass> symmetric_orbit(const DivisorClass& c, const FatPointScheme& z);

/// The Cremona reduction (possibly after adding general points of the curve) reaches a line or conic.
bool is_plausible_rational(const DivisorClass& c);

}  // namespace fatpoints
