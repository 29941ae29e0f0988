#include "fatpoints/rational_curve.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "fatpoints/fp_linalg.hpp"

namespace fatpoints {

namespace {

using Mat3 = Projectivity;

std::uint32_t det3(const Mat3& a, const PrimeField& F) {
  auto minor = [&](int r0, int r1, int c0, int c1) {
    return F.sub(F.mul(a(r0, c0), a(r1, c1)), F.mul(a(r0, c1), a(r1, c0)));
  };
  std::uint32_t d = F.mul(a(0, 0), minor(1, 2, 1, 2));
  d = F.sub(d, F.mul(a(0, 1), minor(1, 2, 0, 2)));
  return F.add(d, F.mul(a(0, 2), minor(1, 2, 0, 1)));
}

Mat3 inverse3(const Mat3& a, const PrimeField& F) {
  const std::uint32_t det = det3(a, F);
  if (det == 0) throw std::invalid_argument("singular projectivity");
  const std::uint32_t inv = F.inv(det);
  Mat3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      // Cofactor of a(j, i) gives the adjugate entry (i, j).
      const int r0 = j == 0 ? 1 : 0, r1 = j == 2 ? 1 : 2;
      const int c0 = i == 0 ? 1 : 0, c1 = i == 2 ? 1 : 2;
      std::uint32_t cof = F.sub(F.mul(a(r0, c0), a(r1, c1)), F.mul(a(r0, c1), a(r1, c0)));
      if ((i + j) % 2 == 1) cof = F.neg(cof);
      out(i, j) = F.mul(cof, inv);
    }
  }
  return out;
}

std::array<BinaryForm, 3> act_on_forms(const Mat3& a, const std::array<BinaryForm, 3>& f) {
  const PrimeField& F = f[0].field();
  std::array<BinaryForm, 3> out{BinaryForm(F, f[0].degree()), BinaryForm(F, f[0].degree()),
                                BinaryForm(F, f[0].degree())};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[i] = out[i] + f[j].scaled(a(i, j));
  }
  return out;
}

ProjectivePoint act_on_point(const Mat3& a, const ProjectivePoint& q, const PrimeField& F) {
  ProjectivePoint out{0, 0, 0};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[i] = F.add(out[i], F.mul(a(i, j), q[j]));
  }
  return out;
}

ProjectivePoint normalized(ProjectivePoint p, const PrimeField& F) {
  int chart = 2;
  while (chart >= 0 && p[chart] == 0) --chart;
  if (chart < 0) throw std::invalid_argument("the zero vector is not a projective point");
  const std::uint32_t inv = F.inv(p[chart]);
  for (auto& x : p) x = F.mul(x, inv);
  return p;
}

ProjectivePoint random_point(FieldSampler& rng) {
  for (;;) {
    ProjectivePoint p{rng.uniform(), rng.uniform(), rng.uniform()};
    if (p[0] != 0 || p[1] != 0 || p[2] != 0) return normalized(p, rng.field());
  }
}

std::int64_t syzygy_kernel_dim(const Parametrization& phi, std::int64_t t) {
  const std::int64_t d = phi.degree();
  PrimeFieldMatrix m(phi.field(), d + t + 1, 3 * (t + 1));
  for (int i = 0; i < 3; ++i) {
    for (std::int64_t j = 0; j <= t; ++j) {
      for (std::int64_t l = 0; l <= d; ++l) m.set(j + l, i * (t + 1) + j, phi.f[i].coeff(l));
    }
  }
  return 3 * (t + 1) - rank(std::move(m));
}

/// Random line or conic parametrization: a random 3 x (e+1) matrix of full rank times the
/// degree-e monomials.
std::optional<Parametrization> random_terminal(std::int64_t e, FieldSampler& rng) {
  const PrimeField& F = rng.field();
  PrimeFieldMatrix a(F, 3, e + 1);
  for (int i = 0; i < 3; ++i) {
    for (std::int64_t j = 0; j <= e; ++j) a.set(i, j, rng.uniform());
  }
  if (rank(a) != e + 1) return std::nullopt;
  std::array<BinaryForm, 3> f{BinaryForm(F, e), BinaryForm(F, e), BinaryForm(F, e)};
  for (int i = 0; i < 3; ++i) {
    for (std::int64_t j = 0; j <= e; ++j) f[i].set(j, a(i, j));
  }
  return make_parametrization(f[0], f[1], f[2]);
}

std::optional<ConstructedCurve> attempt(const DivisorClass& target, const ReductionPlan& plan, FieldSampler& rng) {
  const PrimeField& F = rng.field();
  const DivisorClass& term = plan.reduction.terminal;
  const Eigen::Index n = plan.padded.points();

  auto phi = random_terminal(term.degree, rng);
  if (!phi) return std::nullopt;
  std::vector<ProjectivePoint> pts(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    pts[i] = term.mult[i] == 1 ? normalized(phi->eval(1, rng.uniform()), F) : random_point(rng);
  }

  for (auto step = plan.reduction.steps.rbegin(); step != plan.reduction.steps.rend(); ++step) {
    const std::array<ProjectivePoint, 3> base{pts[(*step)[0]], pts[(*step)[1]], pts[(*step)[2]]};
    Projectivity T;
    try {
      T = frame_projectivity(base, {rng.nonzero(), rng.nonzero(), rng.nonzero()}, F);
      *phi = lift_through_cremona(*phi, T);
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    } catch (const ConstructionError&) {
      return std::nullopt;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == (*step)[0] || i == (*step)[1] || i == (*step)[2]) continue;
      auto img = cremona_image(T, pts[i], F);
      if (!img) return std::nullopt;
      pts[i] = *img;
    }
  }

  if (phi->degree() != target.degree) return std::nullopt;
  if (std::set<ProjectivePoint>(pts.begin(), pts.end()).size() != pts.size()) return std::nullopt;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (multiplicity_at(*phi, pts[i]) != plan.padded.mult[i]) return std::nullopt;
  }
  const ProjectivePoint generic = normalized(phi->eval(1, rng.uniform()), F);
  if (multiplicity_at(*phi, generic) != 1) return std::nullopt;

  pts.resize(static_cast<std::size_t>(target.points()));
  return ConstructedCurve{std::move(*phi), std::move(pts), 0};
}

}  // namespace

SplittingBounds splitting_bounds(std::int64_t d, std::int64_t m) {
  if (m < 0) throw std::invalid_argument("multiplicity must be nonnegative");
  if (m > d) throw std::invalid_argument("multiplicity " + std::to_string(m) + " exceeds degree " + std::to_string(d));
  SplittingBounds out;
  out.lo = std::min(m, d - m);
  out.hi = d - m;
  out.determined = d - m <= m + 1;
  if (out.determined) out.forced = SplittingType{out.lo, std::max(m, d - m)};
  return out;
}

SplittingScan splitting_scan(const Parametrization& phi) {
  const std::int64_t d = phi.degree();
  if (d < 1) throw std::invalid_argument("parametrization degree must be at least 1");
  if (gcd({phi.f[0], phi.f[1], phi.f[2]}).degree() != 0)
    throw std::invalid_argument("parametrization forms are not coprime");
  SplittingScan out;
  std::optional<std::int64_t> a;
  for (std::int64_t t = 0; t <= d; ++t) {
    out.kernel_dims.push_back(syzygy_kernel_dim(phi, t));
    if (!a && out.kernel_dims.back() > 0) a = t;
  }
  if (!a) throw std::domain_error("no syzygy up to the degree of the parametrization");
  out.type = {*a, d - *a};
  if (out.type.a > out.type.b) throw std::domain_error("first syzygy degree exceeds half the degree");
  for (std::int64_t t = 0; t <= d; ++t) {
    const std::int64_t expected = std::max<std::int64_t>(0, t - out.type.a + 1) + std::max<std::int64_t>(0, t - out.type.b + 1);
    if (out.kernel_dims[t] != expected)
      throw std::domain_error("syzygy dimension " + std::to_string(out.kernel_dims[t]) + " at degree " +
                              std::to_string(t) + " does not match type (" + std::to_string(out.type.a) + "," +
                              std::to_string(out.type.b) + ")");
  }
  return out;
}

SplittingType splitting_type(const Parametrization& phi) { return splitting_scan(phi).type; }

std::int64_t multiplicity_at(const Parametrization& phi, const ProjectivePoint& p) {
  const PrimeField& F = phi.field();
  if (p[0] == 0 && p[1] == 0 && p[2] == 0) throw std::invalid_argument("the zero vector is not a projective point");
  std::vector<BinaryForm> minors;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) minors.push_back(phi.f[i].scaled(F.from_int(p[j])) - phi.f[j].scaled(F.from_int(p[i])));
  }
  return gcd(minors).degree();
}

Projectivity frame_projectivity(const std::array<ProjectivePoint, 3>& base, const std::array<std::uint32_t, 3>& scale,
                                const PrimeField& F) {
  Projectivity T;
  for (int j = 0; j < 3; ++j) {
    if (scale[j] % F.modulus() == 0) throw std::invalid_argument("projectivity scale must be nonzero");
    for (int i = 0; i < 3; ++i) T(i, j) = F.mul(base[j][i], scale[j]);
  }
  if (det3(T, F) == 0) throw std::invalid_argument("Cremona base points are collinear");
  return T;
}

std::optional<ProjectivePoint> cremona_image(const Projectivity& T, const ProjectivePoint& q, const PrimeField& F) {
  const ProjectivePoint y = act_on_point(inverse3(T, F), q, F);
  if (y[0] == 0 || y[1] == 0 || y[2] == 0) return std::nullopt;
  const ProjectivePoint z{F.mul(y[1], y[2]), F.mul(y[0], y[2]), F.mul(y[0], y[1])};
  return normalized(act_on_point(T, z, F), F);
}

Parametrization lift_through_cremona(const Parametrization& phi, const Projectivity& T) {
  const PrimeField& F = phi.field();
  const auto psi = act_on_forms(inverse3(T, F), phi.f);
  for (const auto& g : psi) {
    if (g.is_zero()) throw ConstructionError("curve lies on a line through two base points and is contracted");
  }
  std::array<BinaryForm, 3> sigma{psi[1] * psi[2], psi[0] * psi[2], psi[0] * psi[1]};
  const BinaryForm g = gcd({sigma[0], sigma[1], sigma[2]});
  for (auto& s : sigma) s = exact_divide(s, g);
  const auto out = act_on_forms(T, sigma);
  return make_parametrization(out[0], out[1], out[2]);
}

Parametrization lift_through_cremona(const Parametrization& phi, const std::array<ProjectivePoint, 3>& base,
                                     FieldSampler& rng) {
  return lift_through_cremona(phi, frame_projectivity(base, {rng.nonzero(), rng.nonzero(), rng.nonzero()}, phi.field()));
}

std::optional<ReductionPlan> plan_construction(const DivisorClass& c) {
  if (c.degree < 1) return std::nullopt;
  for (Eigen::Index i = 0; i < c.points(); ++i) {
    if (c.mult[i] < 0) return std::nullopt;
  }
  const std::int64_t max_extra = std::min<std::int64_t>(self_intersection(c) + 1, 2 * c.degree);
  for (std::int64_t extra = 0; extra <= max_extra; ++extra) {
    DivisorClass padded{c.degree, IntVector<std::int64_t>(c.points() + extra)};
    padded.mult.head(c.points()) = c.mult;
    padded.mult.tail(extra).setOnes();
    auto red = cremona_reduce(padded);
    if (is_standard_terminal(red.terminal)) return ReductionPlan{std::move(padded), static_cast<Eigen::Index>(extra), std::move(red)};
  }
  return std::nullopt;
}

ConstructedCurve construct_in_class(const DivisorClass& c, PrimeField field, std::uint64_t seed, int max_attempts) {
  const auto plan = plan_construction(c);
  if (!plan) throw ConstructionError("class does not Cremona-reduce to a line or conic");
  FieldSampler rng(field, seed);
  for (int k = 1; k <= max_attempts; ++k) {
    if (auto curve = attempt(c, *plan, rng)) {
      curve->attempts = k;
      return std::move(*curve);
    }
  }
  throw ConstructionError("no curve with the required multiplicities after " + std::to_string(max_attempts) +
                          " attempts");
}

GenericSplitting generic_splitting_type(const DivisorClass& c, PrimeField field, std::uint64_t seed, int trials) {
  if (trials < 1) throw std::invalid_argument("need at least one construction");
  GenericSplitting out;
  for (std::uint64_t s : derive_seeds(seed, static_cast<std::size_t>(trials))) {
    out.per_trial.push_back(splitting_type(construct_in_class(c, field, s).param));
  }
  out.type = *std::max_element(out.per_trial.begin(), out.per_trial.end(),
                               [](const SplittingType& x, const SplittingType& y) { return x.a < y.a; });
  out.agreement = std::all_of(out.per_trial.begin(), out.per_trial.end(),
                              [&](const SplittingType& s) { return s == out.type; });
  return out;
}

}  // namespace fatpoints
