#include "fatpoints/fat_points.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace fatpoints {

FatPointScheme::FatPointScheme(IntVector<std::int64_t> m) : mult(std::move(m)) {
  for (Eigen::Index i = 0; i < mult.size(); ++i) {
    if (mult[i] < 0) throw std::invalid_argument("negative multiplicity " + std::to_string(mult[i]));
  }
}

FatPointScheme::FatPointScheme(std::initializer_list<std::int64_t> m)
    : FatPointScheme(Eigen::Map<const IntVector<std::int64_t>>(m.begin(), static_cast<Eigen::Index>(m.size()))) {}

std::int64_t length(const FatPointScheme& z) {
  std::int64_t l = 0;
  for (Eigen::Index i = 0; i < z.points(); ++i) l += binom2(z.mult[i] + 1);
  return l;
}

std::int64_t shgh_hilbert(const FatPointScheme& z, std::int64_t k) {
  if (k < 0) throw std::invalid_argument("degree must be nonnegative");
  return std::max<std::int64_t>(0, monomial_count(k) - length(z));
}

std::int64_t h1_from_h0(const FatPointScheme& z, std::int64_t k, std::int64_t h0) {
  return h0 - monomial_count(k) + length(z);
}

ExpectedCokernel exp_cok_mu(const FatPointScheme& z, std::int64_t k) {
  const std::int64_t diff = 2 * length(z) - k * (k + 2);
  return {std::max<std::int64_t>(0, diff), diff <= 0, diff >= 0};
}

namespace {

void require_same_points(const FatPointScheme& z, const DivisorClass& c) {
  if (z.points() != c.points())
    throw std::invalid_argument("scheme has " + std::to_string(z.points()) + " points but class has " +
                                std::to_string(c.points()));
}

}  // namespace

std::int64_t intersection_length(const FatPointScheme& z, const DivisorClass& c) {
  require_same_points(z, c);
  std::int64_t l = 0;
  for (Eigen::Index i = 0; i < z.points(); ++i) {
    const std::int64_t m = z.mult[i];
    const std::int64_t r = std::max<std::int64_t>(c.mult[i], 0);
    l += binom2(m + 1) - binom2(std::max<std::int64_t>(m - r, 0) + 1);
  }
  return l;
}

std::int64_t intersection_length(const FatPointScheme& z, const CurveData& c) { return intersection_length(z, c.cls); }

std::int64_t strict_transform_pairing(const FatPointScheme& z, const DivisorClass& c) {
  require_same_points(z, c);
  return z.mult.dot(c.mult);
}

std::int64_t strict_transform_pairing(const FatPointScheme& z, const CurveData& c) {
  return strict_transform_pairing(z, c.cls);
}

ResidualScheme residual(const FatPointScheme& z, const DivisorClass& c, std::int64_t h) {
  require_same_points(z, c);
  if (h < 0) throw std::invalid_argument("residual iteration count must be nonnegative");
  ResidualScheme out;
  out.scheme.mult.resize(z.points());
  for (Eigen::Index i = 0; i < z.points(); ++i) {
    const std::int64_t v = z.mult[i] - h * c.mult[i];
    if (v < 0) out.clamped = true;
    out.scheme.mult[i] = std::max<std::int64_t>(v, 0);
  }
  return out;
}

ResidualScheme residual(const FatPointScheme& z, const CurveData& c, std::int64_t h) { return residual(z, c.cls, h); }

DivisorClass linear_system_class(const FatPointScheme& z, std::int64_t k) { return {k, z.mult}; }

std::int64_t predicted_alpha(const FatPointScheme& z) {
  const std::int64_t l = length(z);
  std::int64_t k = 0;
  while (monomial_count(k) <= l) ++k;
  return k;
}

std::int64_t predicted_tau(const FatPointScheme& z) {
  const std::int64_t l = length(z);
  std::int64_t k = 0;
  while (monomial_count(k) < l) ++k;
  return k;
}

bool is_quasi_uniform(const FatPointScheme& z) {
  if (z.points() < 9) return false;
  std::vector<std::int64_t> m(z.mult.data(), z.mult.data() + z.points());
  std::sort(m.rbegin(), m.rend());
  return m[0] == m[8];
}

}  // namespace fatpoints
