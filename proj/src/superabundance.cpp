#include "fatpoints/superabundance.hpp"

#include <algorithm>
#include <stdexcept>

namespace fatpoints {

namespace {

std::int64_t pos(std::int64_t x) { return std::max<std::int64_t>(x, 0); }

std::int64_t max_mult(const DivisorClass& c) { return c.points() == 0 ? 0 : std::max<std::int64_t>(c.mult.maxCoeff(), 0); }

void require_split(const DivisorClass& c, const SplittingType& s) {
  if (s.a + s.b != c.degree || s.a > s.b)
    throw std::invalid_argument("splitting type (" + std::to_string(s.a) + "," + std::to_string(s.b) +
                                ") is not a <= b with a + b = " + std::to_string(c.degree));
}

}  // namespace

std::int64_t h0_omega_restricted(std::int64_t d, std::int64_t t) {
  if (t <= 0) throw std::invalid_argument("twist must be positive, got " + std::to_string(t));
  if (t <= d - 2) return (t - 1) * (t + 1);
  return d * (2 * t - d);
}

GammaReport gamma_report(const DivisorClass& c, const FatPointScheme& z, std::int64_t k) {
  GammaReport out;
  out.intersection_length = intersection_length(z, c);
  out.h0_omega = h0_omega_restricted(c.degree, k + 1);
  out.value = pos(2 * out.intersection_length - out.h0_omega);
  out.degree_ok = k + 2 >= c.degree;
  out.multiplicity_ok = true;
  for (Eigen::Index i = 0; i < c.points(); ++i) {
    if (c.mult[i] > z.mult[i] + 1) out.multiplicity_ok = false;
  }
  return out;
}

std::int64_t gamma(const DivisorClass& c, const FatPointScheme& z, std::int64_t k) { return gamma_report(c, z, k).value; }

std::int64_t excess(const DivisorClass& c, const FatPointScheme& z, std::int64_t k) {
  return strict_transform_pairing(z, c) - c.degree * k;
}

std::int64_t delta0(const DivisorClass& c, const SplittingType& split, const FatPointScheme& z, std::int64_t k) {
  require_split(c, split);
  const std::int64_t x = excess(c, z, k);
  return pos(x + split.a - 1) + pos(x + split.b - 1);
}

std::int64_t delta0(const CurveData& c, const FatPointScheme& z, std::int64_t k) {
  if (!c.split) throw std::invalid_argument("delta0 needs the splitting type of the curve");
  return delta0(c.cls, *c.split, z, k);
}

Delta0Range delta0_range(const DivisorClass& c, const FatPointScheme& z, std::int64_t k) {
  const SplittingBounds bounds = splitting_bounds(c.degree, max_mult(c));
  const std::int64_t a_max = std::max(bounds.lo, std::min(bounds.hi, c.degree / 2));
  Delta0Range out;
  out.determined = bounds.determined;
  out.hi = delta0(c, {bounds.lo, c.degree - bounds.lo}, z, k);
  out.lo = bounds.determined ? out.hi : delta0(c, {a_max, c.degree - a_max}, z, k);
  return out;
}

std::int64_t DeltaReport::effective_multiplicity() const {
  for (std::size_t h = delta_h.size(); h-- > 0;) {
    if (delta_h[h] > 0) return static_cast<std::int64_t>(h) + 1;
  }
  return 0;
}

DeltaReport delta(const DivisorClass& c, const SplittingType& split, const FatPointScheme& z, std::int64_t t) {
  require_split(c, split);
  if (c.degree < 1) throw std::invalid_argument("delta needs a curve of positive degree");
  if (t < 1) throw std::invalid_argument("delta needs t >= 1");
  DeltaReport out;
  const std::int64_t x = excess(c, z, t);
  const std::int64_t c2 = self_intersection(c);
  for (std::int64_t h = 0; h <= t / c.degree; ++h) {
    const std::int64_t a_h = x + split.a - 1 + h * c2;
    const std::int64_t b_h = x + split.b - 1 + h * c2;
    const ResidualScheme res = residual(z, c, h);
    std::int64_t term = 0;
    if (t - h * c.degree >= 1) {
      term = delta0(c, split, res.scheme, t - h * c.degree);
      if (!res.clamped && term != pos(a_h) + pos(b_h))
        throw std::logic_error("delta_h disagrees with max(0, A_h) + max(0, B_h)");
    }
    out.delta_h.push_back(term);
    out.a_h.push_back(a_h);
    out.b_h.push_back(b_h);
    out.clamped.push_back(res.clamped);
    out.total += term;
  }
  return out;
}

RecursiveCheck check_recursive(const DivisorClass& c, const SplittingType& split, const FatPointScheme& z,
                               std::int64_t t, std::int64_t p) {
  if (p < 0) throw std::invalid_argument("neighbourhood order must be nonnegative");
  RecursiveCheck out;
  const DeltaReport rep = delta(c, split, z, t);
  for (std::int64_t h = 0; h <= p && h < static_cast<std::int64_t>(rep.delta_h.size()); ++h) out.lhs += rep.delta_h[h];
  out.rhs = gamma((p + 1) * c, z, t);

  for (Eigen::Index i = 0; i < c.points(); ++i) {
    if ((p + 1) * c.mult[i] - 1 > z.mult[i]) {
      out.failed_preconditions.push_back("(p+1) r_i - 1 <= m_i fails at point " + std::to_string(i + 1));
      break;
    }
  }
  if (t + 2 < c.degree * (p + 1)) out.failed_preconditions.push_back("t + 2 >= d (p+1) fails");
  // For lines and conics the degree bound still allows t - p d <= 0, where delta_p is undefined.
  if (t - p * c.degree < 1) out.failed_preconditions.push_back("t - p d >= 1 fails, delta_p is undefined");
  const std::int64_t c2 = self_intersection(c);
  const std::int64_t x = excess(c, z, t);
  for (std::int64_t h = 0; h <= p; ++h) {
    if (x + split.a - 1 + h * c2 < 0) {
      out.failed_preconditions.push_back("A_" + std::to_string(h) + " >= 0 fails");
      break;
    }
  }
  out.applicable = out.failed_preconditions.empty();
  out.equal = out.lhs == out.rhs;
  return out;
}

}  // namespace fatpoints
