#include "fatpoints/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "fatpoints/rational_curve.hpp"

namespace fatpoints {

EnumerationBudgetExceeded::EnumerationBudgetExceeded(std::uint64_t n, std::int64_t d)
    : std::runtime_error("candidate enumeration exceeded its budget after " + std::to_string(n) +
                         " search nodes while at degree " + std::to_string(d)),
      nodes(n),
      degree_reached(d) {}

namespace {

struct Slot {
  Eigen::Index index;
  std::int64_t m;
  bool group_start;
  std::int64_t same_after;  // later slots in the same group
};

std::vector<Slot> grouped_slots(const FatPointScheme& z) {
  std::map<std::int64_t, std::vector<Eigen::Index>, std::greater<>> groups;
  for (Eigen::Index i = 0; i < z.points(); ++i) groups[z.mult[i]].push_back(i);
  std::vector<Slot> slots;
  for (const auto& [m, idx] : groups) {
    for (std::size_t j = 0; j < idx.size(); ++j) {
      slots.push_back({idx[j], m, j == 0, static_cast<std::int64_t>(idx.size() - j - 1)});
    }
  }
  return slots;
}

/// Largest h for which delta_h can be counted: (h+1) C must satisfy d <= k+2, r_i <= m_i+1
/// and h d <= k - 1.
std::int64_t last_counted_level(const DivisorClass& c, const FatPointScheme& z, const EnumerationOptions& opts) {
  if (opts.positivity != PositivityFilter::delta || opts.k < 1) return 0;
  std::int64_t n = std::min((opts.k + 2) / c.degree, (opts.k - 1) / c.degree + 1);
  for (Eigen::Index i = 0; i < c.points(); ++i) {
    if (c.mult[i] > 0) n = std::min(n, (z.mult[i] + 1) / c.mult[i]);
  }
  return std::max<std::int64_t>(n - 1, 0);
}

bool may_be_positive(const DivisorClass& c, const FatPointScheme& z, const EnumerationOptions& opts) {
  if (opts.positivity == PositivityFilter::none) return true;
  const std::int64_t d = c.degree;
  const std::int64_t mc = c.points() == 0 ? 0 : c.mult.maxCoeff();
  const std::int64_t b_max = d - std::min(mc, d - mc);
  // Below the last counted level no residual multiplicity is clamped, so
  // g(h) = -F.C + b_max - 1 + h C^2 is linear in h.
  const std::int64_t g0 = strict_transform_pairing(z, c) - d * opts.k + b_max - 1;
  if (g0 > 0) return true;
  const std::int64_t last = last_counted_level(c, z, opts);
  return last > 0 && g0 + last * self_intersection(c) > 0;
}

class Search {
 public:
  Search(const FatPointScheme& z, const EnumerationOptions& opts) : z_(z), opts_(opts), slots_(grouped_slots(z)) {
    m_sum_.assign(slots_.size() + 1, 0.0);
    m_sq_.assign(slots_.size() + 1, 0.0);
    for (std::size_t s = slots_.size(); s-- > 0;) {
      const double m = static_cast<double>(slots_[s].m);
      m_sum_[s] = m_sum_[s + 1] + m;
      m_sq_[s] = m_sq_[s + 1] + m * m;
    }
  }

  std::vector<DivisorClass> run() {
    for (d_ = 1; d_ <= opts_.dmax; ++d_) {
      cap_.resize(slots_.size());
      for (std::size_t s = 0; s < slots_.size(); ++s) {
        cap_[s] = std::min<std::int64_t>(slots_[s].m + 1, std::max<std::int64_t>(d_ - 1, 1));
      }
      // Best remaining C(r,2) mass from slot s on, ignoring order constraints.
      suffix_.assign(slots_.size() + 1, 0);
      for (std::size_t s = slots_.size(); s-- > 0;) suffix_[s] = suffix_[s + 1] + binom2(cap_[s]);
      // delta_h with h >= 1 needs h d <= k - 1, and C^2 <= 3d - 2 for genus 0.
      levels_ = opts_.positivity == PositivityFilter::delta && opts_.k >= 1 ? std::max<std::int64_t>((opts_.k - 1) / d_, 0) : 0;
      current_ = DivisorClass{d_, IntVector<std::int64_t>::Zero(z_.points())};
      descend(0, binom2(d_ - 1), 0, 0, 0);
    }
    return std::move(out_);
  }

 private:
  /// Lower bound on sum r over slots >= s needed to collect `rem` of C(r,2) mass.
  std::int64_t min_rest_sum(std::size_t s, std::int64_t rem) const {
    if (rem <= 0) return 0;
    std::int64_t top = 0;
    for (std::size_t q = s; q < slots_.size(); ++q) top = std::max(top, cap_[q]);
    if (top < 2) return std::numeric_limits<std::int64_t>::max() / 4;
    return (2 * rem + top - 2) / (top - 1);
  }

  /// Whether some completion of the current prefix can still pass the positivity filter.
  /// Over the q slots left, sum (r - 1/2)^2 = 2 rem + q/4 exactly, so Cauchy-Schwarz bounds
  /// sum r m by |m| sqrt(2 rem + q/4) + (sum m)/2.
  bool can_be_positive(std::size_t s, std::int64_t rem, std::int64_t sum_r, std::int64_t sum_rm) const {
    if (opts_.positivity == PositivityFilter::none) return true;
    const double q = static_cast<double>(slots_.size() - s);
    const double bound = std::sqrt(m_sq_[s] * (2.0 * static_cast<double>(rem) + q / 4.0)) + 0.5 * m_sum_[s];
    const std::int64_t rm_max = sum_rm + static_cast<std::int64_t>(std::floor(bound + 1e-6)) + 1;
    const std::int64_t c2_max = std::max<std::int64_t>(3 * d_ - 2 - sum_r, 0);
    return rm_max - d_ * opts_.k + d_ - 1 + levels_ * c2_max > 0;
  }

  void descend(std::size_t s, std::int64_t rem, std::int64_t sum_r, std::int64_t prev, std::int64_t sum_rm) {
    if (++nodes_ > opts_.node_budget) throw EnumerationBudgetExceeded(nodes_, d_);
    if (s == slots_.size()) {
      if (rem == 0) accept();
      return;
    }
    const Slot& slot = slots_[s];
    const std::int64_t cap = slot.group_start ? cap_[s] : std::min(cap_[s], prev);
    const std::int64_t after_group = suffix_[s + 1 + static_cast<std::size_t>(slot.same_after)];
    for (std::int64_t r = cap; r >= 0; --r) {
      const std::int64_t left = rem - binom2(r);
      if (left < 0) continue;
      if (left > slot.same_after * binom2(r) + after_group) break;
      if (sum_r + r + min_rest_sum(s + 1, left) > 3 * d_ - 1) continue;
      if (!can_be_positive(s + 1, left, sum_r + r, sum_rm + r * slot.m)) continue;
      current_.mult[slot.index] = r;
      descend(s + 1, left, sum_r + r, r, sum_rm + r * slot.m);
    }
    current_.mult[slot.index] = 0;
  }

  void accept() {
    if (!may_be_positive(current_, z_, opts_)) return;
    if (opts_.require_plausible && !is_plausible_rational(current_)) return;
    out_.push_back(current_);
  }

  const FatPointScheme& z_;
  const EnumerationOptions& opts_;
  std::vector<Slot> slots_;
  std::vector<std::int64_t> cap_;
  std::vector<std::int64_t> suffix_;
  std::vector<double> m_sum_;
  std::vector<double> m_sq_;
  std::int64_t levels_ = 0;
  std::int64_t d_ = 0;
  DivisorClass current_;
  std::vector<DivisorClass> out_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

std::vector<DivisorClass> enumerate_candidates(const FatPointScheme& z, const EnumerationOptions& opts) {
  if (opts.dmax < 1) throw std::invalid_argument("dmax must be at least 1");
  return Search(z, opts).run();
}

std::vector<DivisorClass> symmetric_orbit(const DivisorClass& c, const FatPointScheme& z) {
  if (c.points() != z.points()) throw std::invalid_argument("class and scheme have different numbers of points");
  std::map<std::int64_t, std::vector<Eigen::Index>> groups;
  for (Eigen::Index i = 0; i < z.points(); ++i) groups[z.mult[i]].push_back(i);
  std::vector<DivisorClass> out{c};
  for (const auto& [m, idx] : groups) {
    std::vector<DivisorClass> next;
    for (const DivisorClass& base : out) {
      std::vector<std::int64_t> vals;
      for (Eigen::Index i : idx) vals.push_back(base.mult[i]);
      std::sort(vals.begin(), vals.end());
      do {
        DivisorClass v = base;
        for (std::size_t j = 0; j < idx.size(); ++j) v.mult[idx[j]] = vals[j];
        next.push_back(std::move(v));
      } while (std::next_permutation(vals.begin(), vals.end()));
    }
    out = std::move(next);
  }
  return out;
}

bool is_plausible_rational(const DivisorClass& c) { return plan_construction(c).has_value(); }

}  // namespace fatpoints
