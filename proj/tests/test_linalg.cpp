#include <doctest.h>

#include <random>
#include <sstream>

#include "fatpoints/fp_linalg.hpp"
#include "fatpoints/oracle.hpp"
#include "independent.hpp"

using namespace fatpoints;

namespace {

PrimeFieldMatrix random_matrix(PrimeField F, Index r, Index c, std::uint64_t seed, Index rank_cap = -1) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<std::uint32_t> d(0, F.modulus() - 1);
  if (rank_cap < 0) {
    FpStorage s(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) s(i, j) = d(gen);
    return {F, s};
  }
  // Product of r x rank_cap and rank_cap x c factors.
  FpStorage a(r, rank_cap), b(rank_cap, c), s = FpStorage::Zero(r, c);
  for (Index i = 0; i < a.size(); ++i) a.data()[i] = d(gen);
  for (Index i = 0; i < b.size(); ++i) b.data()[i] = d(gen);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) {
      std::uint32_t acc = 0;
      for (Index t = 0; t < rank_cap; ++t) acc = F.add(acc, F.mul(a(i, t), b(t, j)));
      s(i, j) = acc;
    }
  return {F, s};
}

std::vector<ref::Row> as_rows(const PrimeFieldMatrix& m) {
  std::vector<ref::Row> out(static_cast<std::size_t>(m.rows()), ref::Row(static_cast<std::size_t>(m.cols())));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

}  // namespace

TEST_CASE("rank of trivial matrices") {
  const PrimeField F;
  CHECK(rank(PrimeFieldMatrix(F, FpStorage::Zero(3, 3))) == 0);
  for (Index n : {1, 5, 70, 130}) CHECK(rank(PrimeFieldMatrix::identity(F, n)) == n);
  CHECK(kernel_basis(PrimeFieldMatrix::identity(F, 4)).rows() == 0);
}

TEST_CASE("kernel of a hyperplane over F_7") {
  const PrimeField F(7);
  FpStorage s(1, 3);
  s << 1, 1, 1;
  const PrimeFieldMatrix K = kernel_basis(PrimeFieldMatrix(F, s));
  REQUIRE(K.rows() == 2);
  CHECK(rank(K) == 2);
  for (Index i = 0; i < K.rows(); ++i) CHECK((K(i, 0) + K(i, 1) + K(i, 2)) % 7 == 0);
}

TEST_CASE("rank agrees with a plain reference elimination") {
  const PrimeField F(1000003);
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const Index r = 20 + static_cast<Index>(seed * 13 % 90), c = 15 + static_cast<Index>(seed * 29 % 100);
    const Index cap = static_cast<Index>(seed % 3 == 0 ? std::min(r, c) / 2 : -1);
    const PrimeFieldMatrix m = random_matrix(F, r, c, seed, cap);
    CHECK(rank(m) == static_cast<Index>(ref::rank(as_rows(m), 1000003)));
  }
}

TEST_CASE("rank plus nullity equals the column count, and kernels are kernels") {
  for (std::uint32_t p : {kMersenne31, 1000003u, 65537u}) {
    const PrimeField F(p);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Index r = 10 + static_cast<Index>(seed * 7), c = 90 - static_cast<Index>(seed * 5);
      const PrimeFieldMatrix m = random_matrix(F, r, c, seed + 100, static_cast<Index>(4 + seed));
      const PrimeFieldMatrix K = kernel_basis(m);
      CHECK(rank(m) + K.rows() == c);
      const PrimeFieldMatrix prod = multiply_transposed(m, K);
      CHECK(prod.storage().isZero(0));
    }
  }
}

TEST_CASE("large blocked elimination matches the low-rank construction") {
  const PrimeField F;
  const PrimeFieldMatrix m = random_matrix(F, 300, 260, 7, 171);
  CHECK(rank(m) == 171);
}

TEST_CASE("rank is invariant under row scaling and permutations") {
  const PrimeField F(1000003);
  PrimeFieldMatrix m = random_matrix(F, 40, 50, 3, 17);
  const Index r0 = rank(m);
  FpStorage s = m.storage();
  s.row(3).swap(s.row(29));
  for (Index j = 0; j < s.cols(); ++j) s(5, j) = F.mul(s(5, j), 777);
  FpStorage t = s;
  t.col(0).swap(t.col(44));
  CHECK(rank(PrimeFieldMatrix(F, s)) == r0);
  CHECK(rank(PrimeFieldMatrix(F, t)) == r0);
}

TEST_CASE("random square matrices are almost always invertible") {
  const PrimeField F(1000003);
  int deficient = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) deficient += rank(random_matrix(F, 25, 25, 1000 + seed)) < 25;
  CHECK(deficient <= 1);
}

TEST_CASE("row echelon form and kernel from it") {
  const PrimeField F(101);
  FpStorage s(3, 4);
  s << 1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 1, 1;
  const EchelonForm e = row_echelon(PrimeFieldMatrix(F, s));
  CHECK(e.rank == 2);
  CHECK(e.pivot_cols == std::vector<Index>{0, 1});
  CHECK(kernel_basis(e).rows() == 2);
}

TEST_CASE("matrix text round trip") {
  const PrimeField F(65537);
  const PrimeFieldMatrix m = random_matrix(F, 7, 9, 5);
  std::stringstream io;
  write_matrix(io, m);
  const PrimeFieldMatrix back = read_matrix(io);
  CHECK(back.field() == F);
  CHECK(back.storage() == m.storage());
}

TEST_CASE("conditions matrix of Z(3,2,1,1) in degree 4") {
  const FatPointScheme z{3, 2, 1, 1};
  const auto cfg = PointConfiguration::random(PrimeField(), 4, 99);
  const PrimeFieldMatrix m = conditions_matrix(z, 4, cfg);
  CHECK(m.rows() == 11);
  CHECK(m.cols() == 15);
  CHECK(rank(m) == 11);
  CHECK(kernel_basis(m).rows() == 4);
}
