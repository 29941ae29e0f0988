#include "fatpoints/oracle.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "fatpoints/random.hpp"

namespace fatpoints {

namespace {

bool is_vertex(const ProjectivePoint& p) {
  return std::count(p.begin(), p.end(), 0u) == 2;
}

/// Scale so the last nonzero coordinate is 1; returns that coordinate's index.
int normalize(ProjectivePoint& p, const PrimeField& F) {
  int chart = 2;
  while (chart >= 0 && p[static_cast<std::size_t>(chart)] == 0) --chart;
  if (chart < 0) throw std::invalid_argument("the zero vector is not a projective point");
  const std::uint32_t inv = F.inv(p[static_cast<std::size_t>(chart)]);
  for (auto& x : p) x = F.mul(x, inv);
  return chart;
}

void require_large_prime(const FatPointScheme& z, const PrimeField& F) {
  if (static_cast<std::int64_t>(F.modulus()) <= z.max_mult())
    throw std::invalid_argument("modulus " + std::to_string(F.modulus()) + " must exceed the largest multiplicity " +
                                std::to_string(z.max_mult()));
}

/// binom[a][i] = C(a, i) mod p for a <= k, i < width.
std::vector<std::vector<std::uint32_t>> binomial_table(std::int64_t k, std::int64_t width, const PrimeField& F) {
  std::vector<std::vector<std::uint32_t>> t(static_cast<std::size_t>(k + 1),
                                            std::vector<std::uint32_t>(static_cast<std::size_t>(width), 0));
  for (std::int64_t a = 0; a <= k; ++a) {
    if (width > 0) t[a][0] = 1;
    for (std::int64_t i = 1; i < width && i <= a; ++i) {
      t[a][i] = F.add(t[a - 1][i - 1], i <= a - 1 ? t[a - 1][i] : 0u);
    }
  }
  return t;
}

std::vector<std::uint32_t> power_table(std::uint32_t x, std::int64_t k, const PrimeField& F) {
  std::vector<std::uint32_t> pw(static_cast<std::size_t>(k + 1), 1);
  for (std::int64_t e = 1; e <= k; ++e) pw[e] = F.mul(pw[e - 1], x);
  return pw;
}

/// Writes the Hasse-derivative rows of one point into `out`, starting at `row`, over `columns`.
Index fill_point_rows(PrimeFieldMatrix& out, Index row, ProjectivePoint p, std::int64_t m, std::int64_t k,
                      const std::vector<std::array<std::int64_t, 3>>& mons, const std::vector<Index>& columns) {
  const PrimeField& F = out.field();
  const int chart = normalize(p, F);
  const int iu = chart == 0 ? 1 : 0;
  const int iv = chart == 2 ? 1 : 2;
  const auto binom = binomial_table(k, m, F);
  const auto upow = power_table(p[iu], k, F);
  const auto vpow = power_table(p[iv], k, F);
  for (std::int64_t i = 0; i < m; ++i) {
    for (std::int64_t j = 0; i + j < m; ++j, ++row) {
      std::uint32_t* dst = out.row_ptr(row);
      for (std::size_t c = 0; c < columns.size(); ++c) {
        const auto& alpha = mons[static_cast<std::size_t>(columns[c])];
        const std::int64_t au = alpha[iu], av = alpha[iv];
        if (au < i || av < j) continue;
        dst[c] = F.mul(F.mul(binom[au][i], upow[au - i]), F.mul(binom[av][j], vpow[av - j]));
      }
    }
  }
  return row;
}

OracleCache::Key cache_key(const FatPointScheme& z, std::int64_t k, const OracleConfig& cfg, std::uint64_t seed) {
  return {std::vector<std::int64_t>(z.mult.data(), z.mult.data() + z.points()), k, cfg.field.modulus(), seed,
          cfg.frame};
}

OracleCache::Entry compute_seed(const FatPointScheme& z, std::int64_t k, const OracleConfig& cfg, std::uint64_t seed,
                                bool need_basis) {
  const auto key = cache_key(z, k, cfg, seed);
  if (cfg.cache) {
    if (auto hit = cfg.cache->find(key, need_basis)) return *hit;
  }
  const PointConfiguration pts = PointConfiguration::random(cfg.field, static_cast<std::size_t>(z.points()), seed, cfg.frame);
  OracleCache::Entry entry;
  if (need_basis) {
    entry.basis = ideal_basis(z, k, pts);
    entry.h0 = entry.basis->rows();
  } else {
    ReducedConditions red = reduced_conditions(z, k, pts);
    entry.h0 = static_cast<std::int64_t>(red.columns.size()) - rank(std::move(red.matrix));
  }
  if (cfg.cache) cfg.cache->store(key, entry);
  return entry;
}

struct MinSummary {
  std::int64_t value;
  std::size_t hits;
};

MinSummary summarize_min(const std::vector<std::int64_t>& v) {
  const std::int64_t lo = *std::min_element(v.begin(), v.end());
  return {lo, static_cast<std::size_t>(std::count(v.begin(), v.end(), lo))};
}

void require_seeds(const OracleConfig& cfg) {
  if (cfg.seeds.empty()) throw std::invalid_argument("oracle needs at least one seed");
}

}  // namespace

PointConfiguration PointConfiguration::random(PrimeField field, std::size_t n, std::uint64_t seed, bool frame) {
  PointConfiguration cfg{field, seed, {}};
  FieldSampler rng(field, seed);
  std::set<ProjectivePoint> seen;
  const std::size_t vertices = frame ? std::min<std::size_t>(n, 3) : 0;
  for (std::size_t i = 0; i < vertices; ++i) {
    ProjectivePoint e{0, 0, 0};
    e[i] = 1;
    seen.insert(e);
    cfg.points.push_back(e);
  }
  while (cfg.points.size() < n) {
    ProjectivePoint p{rng.uniform(), rng.uniform(), rng.uniform()};
    if (p[0] == 0 && p[1] == 0 && p[2] == 0) continue;
    normalize(p, field);
    if (!seen.insert(p).second) continue;
    cfg.points.push_back(p);
  }
  return cfg;
}

std::vector<std::array<std::int64_t, 3>> monomials(std::int64_t k) {
  std::vector<std::array<std::int64_t, 3>> out;
  out.reserve(static_cast<std::size_t>(monomial_count(k)));
  for (std::int64_t a = k; a >= 0; --a) {
    for (std::int64_t b = k - a; b >= 0; --b) out.push_back({a, b, k - a - b});
  }
  return out;
}

PrimeFieldMatrix conditions_matrix(const FatPointScheme& z, std::int64_t k, const PointConfiguration& cfg) {
  if (k < 0) throw std::invalid_argument("degree must be nonnegative");
  if (static_cast<Eigen::Index>(cfg.points.size()) != z.points())
    throw std::invalid_argument("point configuration size does not match the scheme");
  require_large_prime(z, cfg.field);
  const auto mons = monomials(k);
  std::vector<Index> all(mons.size());
  for (std::size_t c = 0; c < all.size(); ++c) all[c] = static_cast<Index>(c);
  PrimeFieldMatrix out(cfg.field, length(z), static_cast<Index>(mons.size()));
  Index row = 0;
  for (Eigen::Index i = 0; i < z.points(); ++i) {
    row = fill_point_rows(out, row, cfg.points[static_cast<std::size_t>(i)], z.mult[i], k, mons, all);
  }
  return out;
}

ReducedConditions reduced_conditions(const FatPointScheme& z, std::int64_t k, const PointConfiguration& cfg) {
  if (k < 0) throw std::invalid_argument("degree must be nonnegative");
  if (static_cast<Eigen::Index>(cfg.points.size()) != z.points())
    throw std::invalid_argument("point configuration size does not match the scheme");
  require_large_prime(z, cfg.field);
  const auto mons = monomials(k);
  std::vector<char> killed(mons.size(), 0);
  Index rows = 0;
  for (Eigen::Index i = 0; i < z.points(); ++i) {
    const ProjectivePoint& p = cfg.points[static_cast<std::size_t>(i)];
    const std::int64_t m = z.mult[i];
    if (!is_vertex(p)) {
      rows += binom2(m + 1);
      continue;
    }
    const std::size_t c = static_cast<std::size_t>(std::find(p.begin(), p.end(), 1u) - p.begin());
    for (std::size_t col = 0; col < mons.size(); ++col) {
      if (mons[col][c] > k - m) killed[col] = 1;
    }
  }
  ReducedConditions red{{}, PrimeFieldMatrix(cfg.field, 0, 0)};
  for (std::size_t col = 0; col < mons.size(); ++col) {
    if (!killed[col]) red.columns.push_back(static_cast<Index>(col));
  }
  red.matrix = PrimeFieldMatrix(cfg.field, rows, static_cast<Index>(red.columns.size()));
  Index row = 0;
  for (Eigen::Index i = 0; i < z.points(); ++i) {
    const ProjectivePoint& p = cfg.points[static_cast<std::size_t>(i)];
    if (is_vertex(p)) continue;
    row = fill_point_rows(red.matrix, row, p, z.mult[i], k, mons, red.columns);
  }
  return red;
}

PrimeFieldMatrix ideal_basis(const FatPointScheme& z, std::int64_t k, const PointConfiguration& cfg) {
  ReducedConditions red = reduced_conditions(z, k, cfg);
  const PrimeFieldMatrix kern = kernel_basis(std::move(red.matrix));
  PrimeFieldMatrix basis(cfg.field, kern.rows(), monomial_count(k));
  for (Index r = 0; r < kern.rows(); ++r) {
    for (std::size_t c = 0; c < red.columns.size(); ++c) basis.storage()(r, red.columns[c]) = kern(r, static_cast<Index>(c));
  }
  return basis;
}

Index multiplication_rank(const PrimeFieldMatrix& basis, std::int64_t k) {
  if (basis.cols() != monomial_count(k)) throw std::invalid_argument("basis does not live in degree k");
  const auto mons = monomials(k);
  PrimeFieldMatrix stacked(basis.field(), 3 * basis.rows(), monomial_count(k + 1));
  for (Index r = 0; r < basis.rows(); ++r) {
    for (int v = 0; v < 3; ++v) {
      std::uint32_t* dst = stacked.row_ptr(3 * r + v);
      for (std::size_t c = 0; c < mons.size(); ++c) {
        const std::uint32_t x = basis(r, static_cast<Index>(c));
        if (x == 0) continue;
        auto e = mons[c];
        ++e[static_cast<std::size_t>(v)];
        dst[monomial_index(k + 1, e[0], e[2])] = x;
      }
    }
  }
  return rank(std::move(stacked));
}

OracleConfig OracleConfig::standard(std::uint64_t master, std::size_t seed_count, PrimeField field) {
  return {field, derive_seeds(master, seed_count), true, std::make_shared<OracleCache>()};
}

HilbertResult hilbert(const FatPointScheme& z, std::int64_t k, const OracleConfig& cfg) {
  require_seeds(cfg);
  HilbertResult out;
  for (std::uint64_t seed : cfg.seeds) out.per_seed.push_back(compute_seed(z, k, cfg, seed, false).h0);
  const MinSummary s = summarize_min(out.per_seed);
  out.h0 = s.value;
  out.agreement = s.hits >= 2;
  if (cfg.seeds.size() >= 2 && !out.agreement)
    throw OracleError("h0 of I_Z(" + std::to_string(k) + ") differs across seeds; raise p or seeds");
  return out;
}

MuRank mu_rank(const FatPointScheme& z, std::int64_t k, const OracleConfig& cfg) {
  require_seeds(cfg);
  MuRank out;
  out.k = k;
  std::vector<std::int64_t> h0s;
  for (std::uint64_t seed : cfg.seeds) {
    const OracleCache::Entry e = compute_seed(z, k, cfg, seed, true);
    h0s.push_back(e.h0);
    out.rank_per_seed.push_back(multiplication_rank(*e.basis, k));
  }
  const MinSummary h = summarize_min(h0s);
  if (cfg.seeds.size() >= 2 && h.hits < 2)
    throw OracleError("h0 of I_Z(" + std::to_string(k) + ") differs across seeds; raise p or seeds");
  std::int64_t best = -1;
  std::size_t best_hits = 0;
  std::size_t eligible = 0;
  for (std::size_t s = 0; s < h0s.size(); ++s) {
    if (h0s[s] != h.value) continue;
    ++eligible;
    if (out.rank_per_seed[s] > best) {
      best = out.rank_per_seed[s];
      best_hits = 1;
    } else if (out.rank_per_seed[s] == best) {
      ++best_hits;
    }
  }
  out.agreement = best_hits >= 2;
  if (eligible >= 2 && !out.agreement)
    throw OracleError("rank of mu_" + std::to_string(k) + " differs across seeds; raise p or seeds");
  out.h0_k = h.value;
  out.h0_next = hilbert(z, k + 1, cfg).h0;
  out.rank = best;
  out.cok_dim = out.h0_next - best;
  out.ker_dim = 3 * out.h0_k - best;
  return out;
}

AlphaTau alpha_tau(const FatPointScheme& z, const OracleConfig& cfg) {
  AlphaTau out;
  std::int64_t a = predicted_alpha(z);
  while (a > 0 && hilbert(z, a - 1, cfg).h0 > 0) --a;
  out.alpha = a;
  std::int64_t t = predicted_tau(z);
  while (h1_from_h0(z, t, hilbert(z, t, cfg).h0) > 0) ++t;
  out.tau = t;
  if (out.alpha - 1 > out.tau) throw OracleError("computed alpha - 1 exceeds tau, which cannot happen");
  return out;
}

std::optional<OracleCache::Entry> OracleCache::find(const Key& key, bool need_basis) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end() || (need_basis && !it->second.basis)) return std::nullopt;
  return it->second;
}

void OracleCache::store(const Key& key, Entry entry) {
  std::lock_guard lock(mutex_);
  auto [it, inserted] = entries_.try_emplace(key, entry);
  if (!inserted && entry.basis) it->second = std::move(entry);
}

}  // namespace fatpoints
