#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fatpoints/prime_field.hpp"

namespace fatpoints {

using Index = Eigen::Index;

/// Row-major residue storage. Rows are contiguous so eliminations stream them.
using FpStorage = Eigen::Matrix<std::uint32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Dense matrix over F_p. Every stored entry is a residue in [0, p).
class PrimeFieldMatrix {
 public:
  PrimeFieldMatrix(PrimeField field, Index rows, Index cols)
      : field_(field), data_(FpStorage::Zero(rows, cols)) {}
  PrimeFieldMatrix(PrimeField field, FpStorage data);

  static PrimeFieldMatrix identity(PrimeField field, Index n);

  Index rows() const { return data_.rows(); }
  Index cols() const { return data_.cols(); }
  const PrimeField& field() const { return field_; }

  std::uint32_t operator()(Index i, Index j) const { return data_(i, j); }
  /// Stores v mod p.
  void set(Index i, Index j, std::int64_t v) { data_(i, j) = field_.from_int(v); }

  std::uint32_t* row_ptr(Index i) { return data_.data() + i * data_.cols(); }
  const std::uint32_t* row_ptr(Index i) const { return data_.data() + i * data_.cols(); }

  FpStorage& storage() { return data_; }
  const FpStorage& storage() const { return data_; }

  friend bool operator==(const PrimeFieldMatrix& a, const PrimeFieldMatrix& b) {
    return a.field_ == b.field_ && a.data_.rows() == b.data_.rows() && a.data_.cols() == b.data_.cols() &&
           a.data_ == b.data_;
  }

 private:
  PrimeField field_;
  FpStorage data_;
};

/// Row echelon form: `rows` holds rank rows, row s has its first nonzero entry at pivot_cols[s].
struct EchelonForm {
  Index rank = 0;
  std::vector<Index> pivot_cols;
  PrimeFieldMatrix rows;
};

/// Gaussian elimination in place with blocked trailing updates. Returns the pivot columns.
/// Afterwards rows [0, rank) are echelon rows; entries to the left of each pivot hold
/// elimination multipliers, not zeros. Rows below rank are garbage.
std::vector<Index> eliminate_in_place(PrimeFieldMatrix& m);

Index rank(PrimeFieldMatrix m);
EchelonForm row_echelon(PrimeFieldMatrix m);

/// Rows span {x : M x^T = 0}; there are cols - rank of them.
PrimeFieldMatrix kernel_basis(PrimeFieldMatrix m);
PrimeFieldMatrix kernel_basis(const EchelonForm& echelon);

/// Product A * B^T over the common field.
PrimeFieldMatrix multiply_transposed(const PrimeFieldMatrix& a, const PrimeFieldMatrix& b);

/// Debug dump: header `rows cols p`, then row-major residues.
void write_matrix(std::ostream& out, const PrimeFieldMatrix& m);
PrimeFieldMatrix read_matrix(std::istream& in);

}  // namespace fatpoints
