#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fatpoints/enumerate.hpp"
#include "fatpoints/fat_points.hpp"
#include "fatpoints/oracle.hpp"
#include "fatpoints/superabundance.hpp"

namespace fatpoints {

enum class Prediction { not_applicable, surjective, injective, fails };

std::string to_string(Prediction p);

/// How a candidate's splitting type was settled.
enum class SplitSource { forced, bounds, construction, unresolved };

std::string to_string(SplitSource s);

struct Witness {
  CurveData curve;
  SplitSource source = SplitSource::forced;
  std::int64_t gamma = 0;
  std::int64_t delta0 = 0;
  /// Filled for the injectivity conjecture.
  std::optional<DeltaReport> delta;
  /// Injectivity conjecture: the curve enters the decomposition as n_j C_j and only
  /// delta_0 .. delta_{n_j - 1} are counted.
  std::int64_t multiplicity = 1;
};

struct ConjectureOptions {
  /// Degree bound for candidates; values < 1 mean k + 2.
  std::int64_t dmax = 0;
  bool run_oracle = true;
  OracleConfig oracle = OracleConfig::standard(kDefaultMasterSeed);
  std::uint64_t construction_seed = kDefaultMasterSeed;
  int construction_trials = 3;
  /// Largest number of curves in a decomposition.
  std::size_t max_members = 16;
  std::uint64_t enumeration_budget = 200'000'000;
  std::uint64_t packing_budget = 2'000'000;
  std::size_t orbit_budget = 20'000;
};

struct Verdict {
  std::string conjecture;
  bool applicable = false;
  std::string reason;
  Prediction prediction = Prediction::not_applicable;
  std::vector<Witness> witnesses;
  /// Candidates whose splitting type could not be settled and which might be witnesses.
  std::vector<DivisorClass> inconclusive;

  std::int64_t k = 0;
  std::int64_t length = 0;
  ExpectedCokernel expected;
  std::int64_t h0 = 0;
  std::int64_t h1 = 0;
  /// h0 and h1 came from the oracle (otherwise from the SHGH prediction).
  bool h0_from_oracle = false;
  std::optional<MuRank> oracle;
  std::optional<bool> oracle_agreement;

  std::size_t candidates = 0;
  /// Candidates where delta0 >= gamma failed; must stay empty.
  std::vector<DivisorClass> gamma_bound_violations;

  /// Injectivity conjecture: total delta of the best decomposition.
  std::int64_t delta_sum = 0;
  /// The decomposition search finished without falling back to the greedy packing.
  bool exhaustive = true;
  /// Guards d <= k+2 and r_i <= m_i+1 hold for sum n_j C_j.
  bool multiplicity_guard_ok = true;
  std::vector<std::string> notes;
};

/// mu_k is surjective unless some smooth rational C with d <= k+2, r_i <= m_i+1 has delta0 > 0.
Verdict conjecture1_verdict(const FatPointScheme& z, std::int64_t k, const ConjectureOptions& opts);

/// mu_k is injective unless pairwise orthogonal curves have total delta > 2l(Z) - k(k+2).
Verdict conjecture2_verdict(const FatPointScheme& z, std::int64_t k, const ConjectureOptions& opts);

struct QuasiUniformViolation {
  DivisorClass cls;
  std::int64_t value = 0;  // -F.C + b - 1 with the largest admissible b
};

struct QuasiUniformReport {
  bool boundary_case = false;  // k = 3m with nine points: F = m(3L - E_1 - ... - E_9)
  std::size_t checked = 0;
  std::vector<QuasiUniformViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// For every candidate with d <= dmax checks -F.C + b - 1 < 0, which forces delta0 = 0.
/// Throws std::invalid_argument unless Z is quasi-uniform with h_Z(k) > 0 and k >= 3m.
QuasiUniformReport quasi_uniform_check(const FatPointScheme& z, std::int64_t k, std::int64_t dmax);

}  // namespace fatpoints
