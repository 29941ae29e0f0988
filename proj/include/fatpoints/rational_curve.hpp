#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fatpoints/binary_form.hpp"
#include "fatpoints/divisor.hpp"
#include "fatpoints/fat_points.hpp"
#include "fatpoints/oracle.hpp"
#include "fatpoints/random.hpp"

namespace fatpoints {

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SplittingBounds {
  std::int64_t lo = 0;  // smallest possible a
  std::int64_t hi = 0;  // largest possible a
  bool determined = false;
  std::optional<SplittingType> forced;
};

/// min(m, d-m) <= a <= d-m for a curve of degree d with a point of multiplicity m.
SplittingBounds splitting_bounds(std::int64_t d, std::int64_t m);

struct SplittingScan {
  SplittingType type;
  /// kernel_dims[t] = dimension of the degree-t syzygies of (f0, f1, f2), t = 0..d.
  std::vector<std::int64_t> kernel_dims;
};

/// Scans syzygy degrees t = 0..d. Throws std::domain_error if the kernel dimensions do not
/// follow max(0, t-a+1) + max(0, t-b+1).
SplittingScan splitting_scan(const Parametrization& phi);
SplittingType splitting_type(const Parametrization& phi);

/// Multiplicity of the image curve at P: degree of the gcd of the 2x2 minors of [phi | P].
std::int64_t multiplicity_at(const Parametrization& phi, const ProjectivePoint& p);

/// Columns are the images of the coordinate vertices: T = [l0 B0 | l1 B1 | l2 B2].
using Projectivity = Eigen::Matrix<std::uint32_t, 3, 3>;

/// Projectivity sending the coordinate vertices to `base`, with column scales `scale`.
/// Throws std::invalid_argument when the base points are collinear.
Projectivity frame_projectivity(const std::array<ProjectivePoint, 3>& base, const std::array<std::uint32_t, 3>& scale,
                                const PrimeField& F);

/// Image of a point under T sigma T^{-1}, where sigma(x) = (x1 x2, x0 x2, x0 x1).
/// Returns nullopt for points on the triangle of base lines.
std::optional<ProjectivePoint> cremona_image(const Projectivity& T, const ProjectivePoint& q, const PrimeField& F);

/// T sigma T^{-1} composed with phi, with the common factor removed.
Parametrization lift_through_cremona(const Parametrization& phi, const Projectivity& T);
Parametrization lift_through_cremona(const Parametrization& phi, const std::array<ProjectivePoint, 3>& base,
                                     FieldSampler& rng);

struct ConstructedCurve {
  Parametrization param;
  /// Realized position of the i-th point; the curve has multiplicity r_i there.
  std::vector<ProjectivePoint> points;
  int attempts = 0;
};

/// Random curve in the class: reduces it by Cremona transforms to a line or conic, draws
/// that curve and the points at random, and lifts back. Multiplicities and birationality
/// are checked; failures retry with fresh randomness up to `max_attempts` times.
ConstructedCurve construct_in_class(const DivisorClass& c, PrimeField field, std::uint64_t seed, int max_attempts = 8);

/// A class to construct in, possibly extended by `extra` trailing points of multiplicity 1,
/// and its Cremona reduction. The extension lets classes whose reduction stalls above
/// degree 2 (for instance d L - (d-1) E_1) reach a line or conic; the extra points are
/// general points of the curve and are dropped afterwards.
struct ReductionPlan {
  DivisorClass padded;
  Eigen::Index extra = 0;
  CremonaReduction<std::int64_t> reduction;
};

/// Tries extra = 0 .. min(C^2 + 1, 2d), so the padded class keeps C^2 >= -1; nullopt if none of
/// them reduces to a standard line or conic class.
std::optional<ReductionPlan> plan_construction(const DivisorClass& c);

struct GenericSplitting {
  SplittingType type;
  std::vector<SplittingType> per_trial;
  bool agreement = false;
};

/// Maximum a over `trials` independent constructions (a only drops on special members).
GenericSplitting generic_splitting_type(const DivisorClass& c, PrimeField field, std::uint64_t seed, int trials = 3);

}  // namespace fatpoints
