#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fatpoints {

template <typename Scalar>
using IntVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Class d*L - sum_i mult[i]*E_i in the divisor class group of the plane blown up at n points.
///
/// Multiplicities are positional: index i always refers to the point P_i. Entries may be
/// negative; validity checks belong to callers.
template <typename Scalar>
struct BasicDivisorClass {
  Scalar degree = 0;
  IntVector<Scalar> mult;

  BasicDivisorClass() = default;
  BasicDivisorClass(Scalar d, IntVector<Scalar> m) : degree(d), mult(std::move(m)) {}
  BasicDivisorClass(Scalar d, std::initializer_list<Scalar> m) : degree(d), mult(static_cast<Eigen::Index>(m.size())) {
    std::copy(m.begin(), m.end(), mult.data());
  }

  Eigen::Index points() const { return mult.size(); }

  friend bool operator==(const BasicDivisorClass& a, const BasicDivisorClass& b) {
    return a.degree == b.degree && a.mult.size() == b.mult.size() && a.mult == b.mult;
  }

  BasicDivisorClass& operator+=(const BasicDivisorClass& o) {
    check_same_points(*this, o);
    degree += o.degree;
    mult += o.mult;
    return *this;
  }
  friend BasicDivisorClass operator+(BasicDivisorClass a, const BasicDivisorClass& b) { return a += b; }
  friend BasicDivisorClass operator*(Scalar s, BasicDivisorClass a) {
    a.degree *= s;
    a.mult *= s;
    return a;
  }

  static void check_same_points(const BasicDivisorClass& a, const BasicDivisorClass& b) {
    if (a.mult.size() != b.mult.size())
      throw std::invalid_argument("divisor classes on different blow-ups: n=" + std::to_string(a.mult.size()) +
                                  " vs n=" + std::to_string(b.mult.size()));
  }
};

using DivisorClass = BasicDivisorClass<std::int64_t>;

/// Intersection pairing: L^2 = 1, E_i^2 = -1, all other products zero.
template <typename Scalar>
Scalar intersect(const BasicDivisorClass<Scalar>& f, const BasicDivisorClass<Scalar>& g) {
  BasicDivisorClass<Scalar>::check_same_points(f, g);
  return f.degree * g.degree - f.mult.dot(g.mult);
}

template <typename Scalar>
Scalar self_intersection(const BasicDivisorClass<Scalar>& f) {
  return intersect(f, f);
}

/// K = -3L + E_1 + ... + E_n.
template <typename Scalar = std::int64_t>
BasicDivisorClass<Scalar> canonical_class(Eigen::Index n) {
  return {Scalar(-3), IntVector<Scalar>::Constant(n, Scalar(-1))};
}

/// C(x, 2), zero for x < 2.
template <typename Scalar>
constexpr Scalar choose2(Scalar x) {
  return x < 2 ? Scalar(0) : x * (x - 1) / 2;
}

/// C(d-1, 2) - sum C(r_i, 2).
template <typename Scalar>
Scalar arithmetic_genus(const BasicDivisorClass<Scalar>& c) {
  Scalar g = choose2<Scalar>(c.degree - 1);
  for (Eigen::Index i = 0; i < c.mult.size(); ++i) g -= choose2<Scalar>(c.mult[i]);
  return g;
}

/// Smooth rational with self-intersection -1: C^2 = -1 and K.C = -1.
template <typename Scalar>
bool is_exceptional(const BasicDivisorClass<Scalar>& c) {
  return self_intersection(c) == -1 && intersect(canonical_class<Scalar>(c.points()), c) == -1;
}

using CremonaBase = std::array<Eigen::Index, 3>;

/// Quadratic transform based at points i, j, k:
/// d' = 2d - r_i - r_j - r_k and r_i' = d - r_j - r_k (cyclically); other entries unchanged.
template <typename Scalar>
BasicDivisorClass<Scalar> cremona_transform(const BasicDivisorClass<Scalar>& f, const CremonaBase& base) {
  const auto [i, j, k] = base;
  const Eigen::Index n = f.points();
  for (Eigen::Index idx : base) {
    if (idx < 0 || idx >= n) throw std::out_of_range("Cremona base index " + std::to_string(idx) + " out of range");
  }
  if (i == j || j == k || i == k) throw std::invalid_argument("Cremona base indices must be distinct");
  BasicDivisorClass<Scalar> out = f;
  const Scalar d = f.degree;
  const Scalar ri = f.mult[i], rj = f.mult[j], rk = f.mult[k];
  out.degree = 2 * d - ri - rj - rk;
  out.mult[i] = d - rj - rk;
  out.mult[j] = d - ri - rk;
  out.mult[k] = d - ri - rj;
  return out;
}

template <typename Scalar>
struct CremonaReduction {
  BasicDivisorClass<Scalar> terminal;
  std::vector<CremonaBase> steps;
};

/// Indices of the three largest multiplicities; ties go to the lexicographically smallest triple.
template <typename Scalar>
CremonaBase largest_three(const BasicDivisorClass<Scalar>& f) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(f.points()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return f.mult[a] > f.mult[b]; });
  CremonaBase base{order[0], order[1], order[2]};
  std::sort(base.begin(), base.end());
  return base;
}

/// Repeatedly transforms at the three largest multiplicities while d > 2 and
/// d < r_i + r_j + r_k. Degree strictly drops each step, so this terminates.
template <typename Scalar>
CremonaReduction<Scalar> cremona_reduce(const BasicDivisorClass<Scalar>& f) {
  CremonaReduction<Scalar> out{f, {}};
  if (f.points() < 3) return out;
  while (out.terminal.degree > 2) {
    const CremonaBase base = largest_three(out.terminal);
    const Scalar s = out.terminal.mult[base[0]] + out.terminal.mult[base[1]] + out.terminal.mult[base[2]];
    if (out.terminal.degree >= s) break;
    out.terminal = cremona_transform(out.terminal, base);
    out.steps.push_back(base);
  }
  return out;
}

/// Classes of lines through at most two of the points and conics through at most five,
/// with every other multiplicity zero. These are the starting curves for constructions.
template <typename Scalar>
bool is_standard_terminal(const BasicDivisorClass<Scalar>& f) {
  if (f.degree != 1 && f.degree != 2) return false;
  Scalar through = 0;
  for (Eigen::Index i = 0; i < f.points(); ++i) {
    if (f.mult[i] < 0 || f.mult[i] > 1) return false;
    through += f.mult[i];
  }
  return through <= (f.degree == 1 ? 2 : 5);
}

}  // namespace fatpoints
