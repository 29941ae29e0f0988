#pragma once

// Randomized property suites shared by the doctest property binary and the acceptance runner.
// Each suite returns how many instances it checked and a description of every failure.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fatpoints/conjecture.hpp"
#include "fatpoints/enumerate.hpp"
#include "fatpoints/literals.hpp"
#include "fatpoints/oracle.hpp"
#include "fatpoints/rational_curve.hpp"
#include "fatpoints/superabundance.hpp"
#include "independent.hpp"

namespace props {

using namespace fatpoints;

struct SuiteResult {
  std::string name;
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty() && checked > 0; }
};

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& gen, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen);
}

/// Random class in the Cremona orbit of a line or conic through some of n points, with
/// nonnegative multiplicities and degree at most `max_degree`. These are smooth rational
/// classes on the blow-up at general points.
inline DivisorClass random_rational_class(Rng& gen, Eigen::Index n, std::int64_t max_degree) {
  IntVector<std::int64_t> r = IntVector<std::int64_t>::Zero(n);
  const bool conic = n >= 5 && uniform(gen, 0, 2) == 0;
  const std::int64_t through = conic ? uniform(gen, 0, 5) : uniform(gen, 0, std::min<Eigen::Index>(2, n));
  for (std::int64_t i = 0; i < through; ++i) r[i] = 1;
  std::shuffle(r.data(), r.data() + n, gen);
  DivisorClass c(conic ? 2 : 1, r);
  if (n < 3) return c;
  const int steps = static_cast<int>(uniform(gen, 0, 8));
  for (int s = 0; s < steps; ++s) {
    CremonaBase base{};
    base[0] = uniform(gen, 0, n - 1);
    do base[1] = uniform(gen, 0, n - 1); while (base[1] == base[0]);
    do base[2] = uniform(gen, 0, n - 1); while (base[2] == base[0] || base[2] == base[1]);
    const DivisorClass next = cremona_transform(c, base);
    if (next.degree < 1 || next.degree > max_degree || next.mult.minCoeff() < 0) continue;
    c = next;
  }
  return c;
}

/// Z with m_i >= r_i - 1 (so r_i <= m_i + 1) plus some slack.
inline FatPointScheme scheme_above(Rng& gen, const DivisorClass& c, std::int64_t shift, std::int64_t slack) {
  IntVector<std::int64_t> m(c.points());
  for (Eigen::Index i = 0; i < c.points(); ++i)
    m[i] = std::max<std::int64_t>(0, shift * c.mult[i] - 1 + uniform(gen, 0, slack));
  return FatPointScheme(m);
}

inline std::string describe(const DivisorClass& c, const FatPointScheme& z, std::int64_t k) {
  return "C=(" + render_class(c) + ") Z=" + render_scheme(z) + " k=" + std::to_string(k);
}

/// delta0 >= gamma for smooth rational C with d <= k + 2 and r_i <= m_i + 1, the splitting type
/// taken from a constructed curve; equality once X + a - 1 >= 0.
inline SuiteResult delta0_vs_gamma(std::uint64_t seed, std::size_t count = 200) {
  SuiteResult out{"delta0 >= gamma (equality when X + a - 1 >= 0)"};
  Rng gen(seed);
  const PrimeField F;
  std::size_t equalities = 0;
  while (out.checked < count) {
    const DivisorClass c = random_rational_class(gen, uniform(gen, 3, 8), 10);
    const FatPointScheme z = scheme_above(gen, c, 1, 4);
    const std::int64_t k = std::max<std::int64_t>(1, c.degree - 2 + uniform(gen, 0, 12));
    SplittingType split;
    try {
      split = generic_splitting_type(c, F, gen(), 1).type;
    } catch (const ConstructionError&) {
      continue;
    }
    ++out.checked;
    const std::int64_t d0 = delta0(c, split, z, k);
    const std::int64_t g = gamma(c, z, k);
    if (d0 < g) out.failures.push_back(describe(c, z, k) + ": delta0 " + std::to_string(d0) + " < gamma " + std::to_string(g));
    if (excess(c, z, k) + split.a - 1 >= 0) {
      ++equalities;
      if (d0 != g) out.failures.push_back(describe(c, z, k) + ": expected equality, delta0 " + std::to_string(d0) + " gamma " + std::to_string(g));
    }
  }
  if (equalities == 0) out.failures.push_back("no instance exercised the equality case");
  return out;
}

/// sum_{h <= p} delta_h(C, Z, t) = gamma((p+1) C, Z, t) whenever the preconditions hold.
inline SuiteResult recursive_sum(std::uint64_t seed, std::size_t count = 100) {
  SuiteResult out{"sum of delta_h equals gamma of (p+1)C"};
  Rng gen(seed);
  const PrimeField F;
  std::size_t attempts = 0;
  while (out.checked < count && ++attempts < 50 * count) {
    const DivisorClass c = random_rational_class(gen, uniform(gen, 3, 7), 8);
    const std::int64_t p = uniform(gen, 0, 2);
    const FatPointScheme z = scheme_above(gen, c, p + 1, 6);
    const std::int64_t t = std::max<std::int64_t>(1, c.degree * (p + 1) - 2 + uniform(gen, 0, 6));
    const SplittingBounds sb = splitting_bounds(c.degree, c.mult.size() ? c.mult.maxCoeff() : 0);
    SplittingType split;
    if (sb.forced) {
      split = *sb.forced;
    } else {
      try {
        split = generic_splitting_type(c, F, gen(), 1).type;
      } catch (const ConstructionError&) {
        continue;
      }
    }
    const RecursiveCheck rc = check_recursive(c, split, z, t, p);
    if (!rc.applicable) continue;
    ++out.checked;
    if (!rc.equal)
      out.failures.push_back(describe(c, z, t) + " p=" + std::to_string(p) + ": " + std::to_string(rc.lhs) +
                             " vs " + std::to_string(rc.rhs));
  }
  return out;
}

/// Quadratic transforms preserve the pairing, the genus and K.C, and are involutions.
inline SuiteResult cremona_invariance(std::uint64_t seed, std::size_t count = 500) {
  SuiteResult out{"Cremona invariance"};
  Rng gen(seed);
  for (; out.checked < count; ++out.checked) {
    const Eigen::Index n = uniform(gen, 3, 10);
    DivisorClass f(uniform(gen, -5, 40), IntVector<std::int64_t>(n));
    DivisorClass g(uniform(gen, -5, 40), IntVector<std::int64_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      f.mult[i] = uniform(gen, -3, 15);
      g.mult[i] = uniform(gen, -3, 15);
    }
    CremonaBase b{};
    b[0] = uniform(gen, 0, n - 1);
    do b[1] = uniform(gen, 0, n - 1); while (b[1] == b[0]);
    do b[2] = uniform(gen, 0, n - 1); while (b[2] == b[0] || b[2] == b[1]);
    const DivisorClass tf = cremona_transform(f, b), tg = cremona_transform(g, b);
    const DivisorClass K = canonical_class(n);
    const std::string tag = "(" + render_class(f) + ")";
    if (intersect(tf, tg) != intersect(f, g)) out.failures.push_back(tag + ": pairing changed");
    if (f.degree >= 1 && tf.degree >= 1 && arithmetic_genus(tf) != arithmetic_genus(f) &&
        (f.mult.minCoeff() >= 0 && tf.mult.minCoeff() >= 0))
      out.failures.push_back(tag + ": genus changed");
    if (intersect(K, tf) != intersect(K, f)) out.failures.push_back(tag + ": K.C changed");
    if (!(cremona_transform(tf, b) == f)) out.failures.push_back(tag + ": not an involution");
  }
  return out;
}

/// Parametrizations built as the cross product of random syzygy vectors of degrees a and d - a:
/// the scan must find (a, d - a), its kernel profile must match, and the reference agrees.
inline SuiteResult splitting_profiles(std::uint64_t seed, std::size_t count = 100) {
  SuiteResult out{"splitting type kernel profiles"};
  Rng gen(seed);
  const PrimeField F(ref::kPrime);
  std::uniform_int_distribution<std::uint32_t> coef(0, F.modulus() - 1);
  auto random_form = [&](std::int64_t deg) {
    std::vector<std::uint32_t> c(static_cast<std::size_t>(deg + 1));
    for (auto& x : c) x = coef(gen);
    return BinaryForm(F, c);
  };
  std::size_t attempts = 0;
  while (out.checked < count && ++attempts < 10 * count) {
    const std::int64_t d = uniform(gen, 1, 12);
    const std::int64_t a = uniform(gen, 0, d / 2);
    std::array<BinaryForm, 3> p{random_form(a), random_form(a), random_form(a)};
    std::array<BinaryForm, 3> q{random_form(d - a), random_form(d - a), random_form(d - a)};
    std::optional<Parametrization> built;
    try {
      built = make_parametrization(p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]);
    } catch (const std::invalid_argument&) {
      continue;  // the cross product had a common factor
    }
    const Parametrization& phi = *built;
    ++out.checked;
    const std::string tag = "d=" + std::to_string(d) + " a=" + std::to_string(a);
    SplittingScan scan;
    try {
      scan = splitting_scan(phi);
    } catch (const std::domain_error& e) {
      out.failures.push_back(tag + ": " + e.what());
      continue;
    }
    if (!(scan.type == SplittingType{a, d - a}))
      out.failures.push_back(tag + ": found (" + std::to_string(scan.type.a) + "," + std::to_string(scan.type.b) + ")");
    for (std::size_t t = 0; t < scan.kernel_dims.size(); ++t) {
      const auto ti = static_cast<std::int64_t>(t);
      const std::int64_t want = std::max<std::int64_t>(0, ti - a + 1) + std::max<std::int64_t>(0, ti - (d - a) + 1);
      if (scan.kernel_dims[t] != want) out.failures.push_back(tag + ": kernel profile mismatch at t=" + std::to_string(t));
    }
    std::vector<ref::Row> rows;
    for (const BinaryForm& f : phi.f) rows.emplace_back(f.coeffs().begin(), f.coeffs().end());
    if (ref::splitting(rows) != std::make_pair(static_cast<int>(scan.type.a), static_cast<int>(scan.type.b)))
      out.failures.push_back(tag + ": reference scan disagrees");
  }
  return out;
}

/// The generic Hilbert function is never below the expected value.
inline SuiteResult hilbert_above_expected(std::uint64_t seed, std::size_t count = 200) {
  SuiteResult out{"oracle h0 >= SHGH prediction"};
  Rng gen(seed);
  const OracleConfig cfg = OracleConfig::standard(seed);
  for (; out.checked < count; ++out.checked) {
    const Eigen::Index n = uniform(gen, 1, 9);
    IntVector<std::int64_t> m(n);
    for (Eigen::Index i = 0; i < n; ++i) m[i] = uniform(gen, 0, 6);
    const FatPointScheme z(m);
    const std::int64_t k = uniform(gen, 1, 15);
    const std::int64_t h0 = hilbert(z, k, cfg).h0;
    if (h0 < shgh_hilbert(z, k))
      out.failures.push_back("Z=" + render_scheme(z) + " k=" + std::to_string(k) + ": h0 " + std::to_string(h0));
  }
  return out;
}

/// The four classes that would contradict the surjectivity conjecture without the guards.
inline SuiteResult guard_rejections() {
  SuiteResult out{"counterexample classes are excluded by the guards"};
  struct Row {
    const char* scheme;
    std::int64_t k;
    const char* cls;
  };
  for (const Row& r : {Row{"1,0^7", 1, "4; 3,1^7"}, Row{"1^4,0^4", 2, "5; 3,2,2,2,1,1,1,1"},
                       Row{"1^7,0", 3, "8; 3^7,1"}, Row{"2,2,1^5,0", 4, "7; 4,3,2^6"}}) {
    ++out.checked;
    const FatPointScheme z = parse_scheme(r.scheme);
    const DivisorClass c = parse_class(r.cls);
    const GammaReport g = gamma_report(c, z, r.k);
    if (g.degree_ok && g.multiplicity_ok) out.failures.push_back(std::string(r.cls) + ": satisfies both guards");
    EnumerationOptions eo;
    eo.dmax = std::max<std::int64_t>(r.k + 2, c.degree);
    eo.k = r.k;
    eo.require_plausible = false;
    const auto all = enumerate_candidates(z, eo);
    for (const DivisorClass& o : symmetric_orbit(c, z))
      if (std::find(all.begin(), all.end(), o) != all.end()) out.failures.push_back(std::string(r.cls) + ": enumerated");
  }
  return out;
}

/// Random quasi-uniform schemes above the anticanonical degree: no candidate can contribute.
inline SuiteResult quasi_uniform(std::uint64_t seed, std::size_t count = 50) {
  SuiteResult out{"quasi-uniform schemes with k > 3m"};
  Rng gen(seed);
  while (out.checked < count) {
    const std::int64_t m = uniform(gen, 1, 4);
    const Eigen::Index extra = uniform(gen, 0, 3);
    IntVector<std::int64_t> mult(9 + extra);
    for (Eigen::Index i = 0; i < 9; ++i) mult[i] = m;
    for (Eigen::Index i = 9; i < mult.size(); ++i) mult[i] = uniform(gen, 0, m);
    std::shuffle(mult.data(), mult.data() + mult.size(), gen);
    const FatPointScheme z(mult);
    const std::int64_t k = 3 * m + uniform(gen, 1, 4);
    if (shgh_hilbert(z, k) <= 0) continue;
    ++out.checked;
    const QuasiUniformReport r = quasi_uniform_check(z, k, k);
    for (const auto& v : r.violations)
      out.failures.push_back("Z=" + render_scheme(z) + " k=" + std::to_string(k) + ": (" + render_class(v.cls) +
                             ") value " + std::to_string(v.value));
  }
  return out;
}

}  // namespace props
