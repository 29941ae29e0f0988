#include "fatpoints/conjecture.hpp"

#include <algorithm>
#include <numeric>

#include "fatpoints/random.hpp"
#include "fatpoints/rational_curve.hpp"

namespace fatpoints {

std::string to_string(Prediction p) {
  switch (p) {
    case Prediction::not_applicable: return "not applicable";
    case Prediction::surjective: return "surjective";
    case Prediction::injective: return "injective";
    case Prediction::fails: return "fails";
  }
  return "unknown";
}

std::string to_string(SplitSource s) {
  switch (s) {
    case SplitSource::forced: return "forced";
    case SplitSource::bounds: return "bounds";
    case SplitSource::construction: return "construction";
    case SplitSource::unresolved: return "unresolved";
  }
  return "unknown";
}

namespace {

constexpr const char* kPlausibilityNote =
    "candidates are filtered by Cremona reduction to a line or conic; this is a heuristic for "
    "containing an irreducible curve with smooth rational strict transform";
constexpr const char* kCharacteristicNote = "oracle values are char p evidence from random points over F_p";

std::int64_t max_r(const DivisorClass& c) { return c.points() == 0 ? 0 : std::max<std::int64_t>(c.mult.maxCoeff(), 0); }

/// Per-class seed so constructions do not depend on enumeration order.
std::uint64_t class_seed(std::uint64_t master, const DivisorClass& c) {
  std::uint64_t h = 1469598103934665603ull ^ master;
  auto mix = [&](std::int64_t v) {
    h ^= static_cast<std::uint64_t>(v);
    h *= 1099511628211ull;
  };
  mix(c.degree);
  for (Eigen::Index i = 0; i < c.points(); ++i) mix(c.mult[i]);
  return derive_seeds(h, 1).front();
}

Verdict prepare(const std::string& name, const FatPointScheme& z, std::int64_t k, const ConjectureOptions& opts) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  Verdict v;
  v.conjecture = name;
  v.k = k;
  v.length = length(z);
  v.expected = exp_cok_mu(z, k);
  if (opts.run_oracle) {
    v.h0 = hilbert(z, k, opts.oracle).h0;
    v.h0_from_oracle = true;
    v.notes.push_back(kCharacteristicNote);
  } else {
    v.h0 = shgh_hilbert(z, k);
    v.notes.push_back("h0 is the SHGH prediction; the oracle was not run");
  }
  v.h1 = h1_from_h0(z, k, v.h0);
  v.notes.push_back(kPlausibilityNote);
  return v;
}

std::int64_t effective_dmax(std::int64_t k, const ConjectureOptions& opts) { return opts.dmax >= 1 ? opts.dmax : k + 2; }

bool within_guards(const DivisorClass& c, const FatPointScheme& z, std::int64_t k) {
  if (c.degree > k + 2) return false;
  for (Eigen::Index i = 0; i < c.points(); ++i) {
    if (c.mult[i] > z.mult[i] + 1) return false;
  }
  return true;
}

std::optional<SplittingType> construct_split(const DivisorClass& c, const ConjectureOptions& opts) {
  try {
    return generic_splitting_type(c, opts.oracle.field, class_seed(opts.construction_seed, c), opts.construction_trials)
        .type;
  } catch (const ConstructionError&) {
    return std::nullopt;
  }
}

SplittingType at_a(const DivisorClass& c, std::int64_t a) { return {a, c.degree - a}; }

/// Smallest and largest admissible a (a <= b) from the splitting bounds.
std::pair<std::int64_t, std::int64_t> a_range(const DivisorClass& c) {
  const SplittingBounds b = splitting_bounds(c.degree, max_r(c));
  return {b.lo, std::max(b.lo, std::min(b.hi, c.degree / 2))};
}

void check_oracle(Verdict& v, const FatPointScheme& z, const ConjectureOptions& opts, bool surjectivity) {
  if (!opts.run_oracle) return;
  v.oracle = mu_rank(z, v.k, opts.oracle);
  const bool actual_failure = surjectivity ? v.oracle->cok_dim > 0 : v.oracle->ker_dim > 0;
  v.oracle_agreement = actual_failure == (v.prediction == Prediction::fails);
}

struct Item {
  DivisorClass cls;
  SplittingType split;
  SplitSource source;
  DeltaReport report;
  std::int64_t gamma;
  std::int64_t multiplicity = 1;  // n_j: how many times the curve is counted
  std::int64_t weight = 0;        // delta_0 + ... + delta_{n_j - 1}
};

/// Largest n <= min(effective multiplicity, k / d) with n C inside the guards, trimmed so that
/// delta_{n-1} > 0, and the delta mass it keeps.
void settle_multiplicity(Item& item, const FatPointScheme& z, std::int64_t k) {
  std::int64_t n = std::min(item.report.effective_multiplicity(), k / item.cls.degree);
  while (n > 0 && !within_guards(n * item.cls, z, k)) --n;
  while (n > 0 && item.report.delta_h[static_cast<std::size_t>(n - 1)] == 0) --n;
  item.multiplicity = n;
  item.weight = 0;
  for (std::int64_t h = 0; h < n; ++h) item.weight += item.report.delta_h[static_cast<std::size_t>(h)];
}

class Packing {
 public:
  Packing(const std::vector<Item>& items, const FatPointScheme& z, std::int64_t k, const ConjectureOptions& opts)
      : items_(items), z_(z), k_(k), opts_(opts) {
    order_.resize(items_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) {
                       if (items_[a].weight != items_[b].weight) return items_[a].weight > items_[b].weight;
                       return items_[a].cls.degree < items_[b].cls.degree;
                     });
    prefix_.assign(order_.size() + 1, 0);
    for (std::size_t i = 0; i < order_.size(); ++i) prefix_[i + 1] = prefix_[i] + items_[order_[i]].weight;
  }

  std::vector<std::size_t> solve(bool& exhaustive) {
    sum_r_ = IntVector<std::int64_t>::Zero(z_.points());
    try {
      branch(0, 0);
      exhaustive = true;
    } catch (const BudgetHit&) {
      exhaustive = false;
      greedy();
    }
    return best_;
  }

 private:
  struct BudgetHit {};

  bool compatible(std::size_t idx) const {
    const DivisorClass& c = items_[idx].cls;
    const std::int64_t n = items_[idx].multiplicity;
    if (chosen_.size() >= opts_.max_members) return false;
    if (sum_d_ + n * c.degree > k_ + 2) return false;
    for (Eigen::Index i = 0; i < z_.points(); ++i) {
      if (sum_r_[i] + n * c.mult[i] > z_.mult[i] + 1) return false;
    }
    for (std::size_t j : chosen_) {
      if (items_[j].cls == c || intersect(items_[j].cls, c) != 0) return false;
    }
    return true;
  }

  void push(std::size_t idx) {
    chosen_.push_back(idx);
    sum_d_ += items_[idx].multiplicity * items_[idx].cls.degree;
    sum_r_ += items_[idx].multiplicity * items_[idx].cls.mult;
  }
  void pop() {
    const std::size_t idx = chosen_.back();
    chosen_.pop_back();
    sum_d_ -= items_[idx].multiplicity * items_[idx].cls.degree;
    sum_r_ -= items_[idx].multiplicity * items_[idx].cls.mult;
  }

  void branch(std::size_t pos, std::int64_t weight) {
    if (++nodes_ > opts_.packing_budget) throw BudgetHit{};
    consider(weight);
    if (pos == order_.size()) return;
    const std::size_t slots = opts_.max_members - chosen_.size();
    const std::size_t end = std::min(order_.size(), pos + slots);
    const std::int64_t reachable = weight + prefix_[end] - prefix_[pos];
    // Equal weight is still worth exploring while it could come with a smaller total degree.
    if (reachable < best_weight_ || (reachable == best_weight_ && sum_d_ >= best_degree_)) return;
    const std::size_t idx = order_[pos];
    if (compatible(idx)) {
      push(idx);
      branch(pos + 1, weight + items_[idx].weight);
      pop();
    }
    branch(pos + 1, weight);
  }

  void greedy() {
    chosen_.clear();
    sum_d_ = 0;
    sum_r_.setZero();
    std::int64_t weight = 0;
    for (std::size_t idx : order_) {
      if (!compatible(idx)) continue;
      push(idx);
      weight += items_[idx].weight;
    }
    consider(weight);
  }

  /// Keeps the heaviest decomposition, preferring the smaller total degree on ties.
  void consider(std::int64_t weight) {
    if (weight > best_weight_ || (weight == best_weight_ && weight > 0 && sum_d_ < best_degree_)) {
      best_weight_ = weight;
      best_degree_ = sum_d_;
      best_ = chosen_;
    }
  }

  const std::vector<Item>& items_;
  const FatPointScheme& z_;
  std::int64_t k_;
  const ConjectureOptions& opts_;
  std::vector<std::size_t> order_;
  std::vector<std::int64_t> prefix_;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> best_;
  std::int64_t best_weight_ = 0;
  std::int64_t best_degree_ = 0;
  std::int64_t sum_d_ = 0;
  IntVector<std::int64_t> sum_r_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

Verdict conjecture1_verdict(const FatPointScheme& z, std::int64_t k, const ConjectureOptions& opts) {
  Verdict v = prepare("conjecture 1 (surjectivity)", z, k, opts);
  if (v.h1 != 0 || !v.expected.exp_onto) {
    v.reason = v.h1 != 0 ? "h1(I_Z(k)) = " + std::to_string(v.h1) + " is not zero" : "mu_k is expected to be injective, not surjective";
    return v;
  }
  v.applicable = true;
  v.prediction = Prediction::surjective;

  EnumerationOptions eo;
  eo.dmax = effective_dmax(k, opts);
  eo.k = k;
  eo.positivity = PositivityFilter::delta0;
  eo.node_budget = opts.enumeration_budget;
  const auto candidates = enumerate_candidates(z, eo);
  v.candidates = candidates.size();

  for (const DivisorClass& c : candidates) {
    const Delta0Range range = delta0_range(c, z, k);
    const GammaReport g = gamma_report(c, z, k);
    if (g.degree_ok && g.multiplicity_ok && g.value > range.lo) v.gamma_bound_violations.push_back(c);

    Witness w;
    w.curve = CurveData(c);
    w.gamma = g.value;
    if (range.determined) {
      const auto [lo, hi] = a_range(c);
      w.curve.split = at_a(c, lo);
      w.source = SplitSource::forced;
      w.delta0 = range.lo;
    } else if (!range.needs_construction()) {
      w.source = SplitSource::bounds;
      w.delta0 = range.lo;
    } else if (auto split = construct_split(c, opts)) {
      w.curve.split = split;
      w.source = SplitSource::construction;
      w.delta0 = delta0(c, *split, z, k);
      if (g.degree_ok && g.multiplicity_ok && g.value > w.delta0) v.gamma_bound_violations.push_back(c);
    } else {
      v.inconclusive.push_back(c);
      continue;
    }
    if (w.delta0 > 0) v.witnesses.push_back(std::move(w));
  }
  if (!v.witnesses.empty()) v.prediction = Prediction::fails;
  check_oracle(v, z, opts, true);
  return v;
}

Verdict conjecture2_verdict(const FatPointScheme& z, std::int64_t k, const ConjectureOptions& opts) {
  Verdict v = prepare("conjecture 2 (injectivity)", z, k, opts);
  if (v.h1 != 0 || !v.expected.exp_inj) {
    v.reason = v.h1 != 0 ? "h1(I_Z(k)) = " + std::to_string(v.h1) + " is not zero" : "mu_k is expected to be surjective, not injective";
    return v;
  }
  v.applicable = true;
  v.prediction = Prediction::injective;

  EnumerationOptions eo;
  eo.dmax = effective_dmax(k, opts);
  eo.k = k;
  eo.positivity = PositivityFilter::delta;
  eo.node_budget = opts.enumeration_budget;
  const auto candidates = enumerate_candidates(z, eo);
  v.candidates = candidates.size();

  std::vector<Item> items;
  for (const DivisorClass& c : candidates) {
    if (c.degree > k) continue;  // delta needs t - h d >= 1 for some h
    const auto [lo, hi] = a_range(c);
    const GammaReport g = gamma_report(c, z, k);
    Item item{c, at_a(c, lo), SplitSource::forced, delta(c, at_a(c, lo), z, k), g.value};
    if (g.degree_ok && g.multiplicity_ok && g.value > delta(c, at_a(c, hi), z, k).delta0())
      v.gamma_bound_violations.push_back(c);
    if (lo != hi) {
      DeltaReport at_hi = delta(c, at_a(c, hi), z, k);
      if (at_hi.total == item.report.total) {
        item.source = SplitSource::bounds;
      } else if (auto split = construct_split(c, opts)) {
        item.split = *split;
        item.source = SplitSource::construction;
        item.report = delta(c, *split, z, k);
      } else {
        v.inconclusive.push_back(c);
        continue;
      }
    }
    settle_multiplicity(item, z, k);
    if (item.weight <= 0) continue;
    const auto orbit = symmetric_orbit(c, z);
    if (items.size() + orbit.size() > opts.orbit_budget) {
      v.exhaustive = false;
      v.notes.push_back("orbit expansion budget reached; remaining candidates were not packed");
      break;
    }
    for (const DivisorClass& member : orbit) {
      Item copy = item;
      copy.cls = member;
      items.push_back(std::move(copy));
    }
  }

  bool exhaustive = true;
  const auto chosen = Packing(items, z, k, opts).solve(exhaustive);
  v.exhaustive = v.exhaustive && exhaustive;
  if (!exhaustive) v.notes.push_back("decomposition search hit its budget; greedy packing used");

  std::int64_t sum_d = 0;
  IntVector<std::int64_t> sum_r = IntVector<std::int64_t>::Zero(z.points());
  for (std::size_t idx : chosen) {
    const Item& it = items[idx];
    Witness w;
    w.curve = CurveData(it.cls, it.split);
    w.source = it.source;
    w.gamma = it.gamma;
    w.delta0 = it.report.delta0();
    w.delta = it.report;
    w.multiplicity = it.multiplicity;
    v.delta_sum += it.weight;
    sum_d += it.multiplicity * it.cls.degree;
    sum_r += it.multiplicity * it.cls.mult;
    v.witnesses.push_back(std::move(w));
  }
  v.multiplicity_guard_ok = within_guards(DivisorClass{sum_d, sum_r}, z, k);
  if (std::any_of(v.witnesses.begin(), v.witnesses.end(), [](const Witness& w) { return w.multiplicity > 1; }))
    v.notes.push_back("the decomposition counts some curves with n_j > 1; only delta_h with h < n_j enter the sum");
  if (v.delta_sum > v.expected.dim) {
    v.prediction = Prediction::fails;
  } else {
    v.witnesses.clear();
  }
  check_oracle(v, z, opts, false);
  return v;
}

QuasiUniformReport quasi_uniform_check(const FatPointScheme& z, std::int64_t k, std::int64_t dmax) {
  if (!is_quasi_uniform(z)) throw std::invalid_argument("scheme is not quasi-uniform");
  const std::int64_t m = z.max_mult();
  if (shgh_hilbert(z, k) <= 0) throw std::invalid_argument("h_Z(k) must be positive");
  if (k < 3 * m) throw std::invalid_argument("k must be at least 3m");
  QuasiUniformReport out;
  if (k == 3 * m) {
    out.boundary_case = true;
    return out;
  }
  EnumerationOptions eo;
  eo.dmax = dmax;
  eo.k = k;
  const auto candidates = enumerate_candidates(z, eo);
  out.checked = candidates.size();
  for (const DivisorClass& c : candidates) {
    const auto [lo, hi] = a_range(c);
    const std::int64_t value = excess(c, z, k) + (c.degree - lo) - 1;
    if (value >= 0) out.violations.push_back({c, value});
  }
  return out;
}

}  // namespace fatpoints
