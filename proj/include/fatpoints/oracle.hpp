#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "fatpoints/fat_points.hpp"
#include "fatpoints/fp_linalg.hpp"
#include "fatpoints/prime_field.hpp"

namespace fatpoints {

using ProjectivePoint = std::array<std::uint32_t, 3>;

/// Raised when the seeds do not give a trustworthy generic value.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Concrete points standing in for general points.
struct PointConfiguration {
  PrimeField field;
  std::uint64_t seed = 0;
  std::vector<ProjectivePoint> points;

  /// n random points, pairwise distinct. With `frame` the first min(n, 3) points are the
  /// coordinate vertices, which is no loss of generality up to a projectivity and lets the
  /// oracle drop their conditions as unit rows.
  static PointConfiguration random(PrimeField field, std::size_t n, std::uint64_t seed, bool frame = true);
};

/// Index of x0^a x1^b x2^c among degree-k monomials in graded lex order (x0 > x1 > x2).
constexpr Index monomial_index(std::int64_t k, std::int64_t a, std::int64_t c) {
  return static_cast<Index>((k - a) * (k - a + 1) / 2 + c);
}

/// Exponent triples of all degree-k monomials in graded lex order.
std::vector<std::array<std::int64_t, 3>> monomials(std::int64_t k);

/// Rows: for each point, the Hasse derivatives of order < m_i in the chart of its last
/// nonzero coordinate. Columns: degree-k monomials. Throws if p <= max m_i.
PrimeFieldMatrix conditions_matrix(const FatPointScheme& z, std::int64_t k, const PointConfiguration& cfg);

/// The same linear conditions after discarding the unit rows contributed by points that
/// sit on coordinate vertices: `matrix` has the remaining rows restricted to `columns`.
/// rank(full) = (C(k+2,2) - columns.size()) + rank(matrix).
struct ReducedConditions {
  std::vector<Index> columns;
  PrimeFieldMatrix matrix;
};
ReducedConditions reduced_conditions(const FatPointScheme& z, std::int64_t k, const PointConfiguration& cfg);

/// Kernel of the conditions (rows span I(Z)_k in monomial coordinates) for one configuration.
PrimeFieldMatrix ideal_basis(const FatPointScheme& z, std::int64_t k, const PointConfiguration& cfg);

/// Image rank of I(Z)_k (x) <x0,x1,x2> -> degree k+1, from a basis of I(Z)_k.
Index multiplication_rank(const PrimeFieldMatrix& basis, std::int64_t k);

class OracleCache;

/// Field, seeds and options shared by oracle queries. Copies share the cache.
struct OracleConfig {
  PrimeField field;
  std::vector<std::uint64_t> seeds;
  bool frame = true;
  std::shared_ptr<OracleCache> cache;

  /// Three seeds derived from `master`, default field, fresh cache.
  static OracleConfig standard(std::uint64_t master, std::size_t seed_count = 3,
                               PrimeField field = PrimeField());
};

struct HilbertResult {
  std::int64_t h0 = 0;
  std::vector<std::int64_t> per_seed;
  /// The minimum was attained by at least two seeds.
  bool agreement = false;
};

struct MuRank {
  std::int64_t k = 0;
  std::int64_t rank = 0;
  std::int64_t cok_dim = 0;
  std::int64_t ker_dim = 0;
  std::int64_t h0_k = 0;
  std::int64_t h0_next = 0;
  std::vector<std::int64_t> rank_per_seed;
  bool agreement = false;
};

struct AlphaTau {
  std::int64_t alpha = 0;
  std::int64_t tau = 0;
};

/// Generic h^0(I_Z(k)) as the minimum over seeds. Throws OracleError when the minimum is
/// attained by only one of several seeds.
HilbertResult hilbert(const FatPointScheme& z, std::int64_t k, const OracleConfig& cfg);

/// Rank, cokernel and kernel dimensions of mu_k : I(Z)_k (x) R_1 -> I(Z)_{k+1}.
MuRank mu_rank(const FatPointScheme& z, std::int64_t k, const OracleConfig& cfg);

/// alpha = least k with h^0 > 0; tau = least k with h^1 = 0 and C(k+2,2) >= l(Z).
AlphaTau alpha_tau(const FatPointScheme& z, const OracleConfig& cfg);

/// Memo of per-seed results keyed by (multiplicities, k, p, seed, frame). Thread-safe.
class OracleCache {
 public:
  struct Entry {
    std::int64_t h0 = 0;
    std::optional<PrimeFieldMatrix> basis;
  };
  using Key = std::tuple<std::vector<std::int64_t>, std::int64_t, std::uint32_t, std::uint64_t, bool>;

  std::optional<Entry> find(const Key& key, bool need_basis) const;
  void store(const Key& key, Entry entry);

 private:
  mutable std::mutex mutex_;
  std::map<Key, Entry> entries_;
};

}  // namespace fatpoints
