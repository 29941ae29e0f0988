#include "fatpoints/fp_linalg.hpp"

#include <algorithm>
#if defined(__AVX512F__)
#include <immintrin.h>
#endif
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace fatpoints {

namespace {

constexpr Index kPanelWidth = 64;
constexpr Index kColumnTile = 2048;

// Reduction policies for delayed accumulation. fold() maps a product of two residues to a
// value below 2^32 congruent to it, so up to 2^32 folded terms fit in a uint64 accumulator.
struct MersenneFold {
  static constexpr std::uint64_t kP = kMersenne31;
  std::uint64_t fold(std::uint64_t x) const { return (x & kP) + (x >> 31); }
  std::uint32_t reduce(std::uint64_t x) const {
    x = (x & kP) + (x >> 31);
    x = (x & kP) + (x >> 31);
    return static_cast<std::uint32_t>(x >= kP ? x - kP : x);
  }
};

struct GenericFold {
  std::uint64_t p;
  std::uint64_t fold(std::uint64_t x) const { return x % p; }
  std::uint32_t reduce(std::uint64_t x) const { return static_cast<std::uint32_t>(x % p); }
};

template <class Fold>
inline void accumulate(std::uint64_t* __restrict acc, std::uint64_t coef, const std::uint32_t* __restrict x,
                       Index n, const Fold& f) {
  for (Index j = 0; j < n; ++j) acc[j] += f.fold(coef * x[j]);
}

// target[j] += sum_t coefs[t] * sources[t][j] for j in [begin, end).
template <class Fold>
void combine_rows(std::uint32_t* target, const std::vector<std::uint32_t>& coefs,
                  const std::vector<const std::uint32_t*>& sources, Index begin, Index end, const Fold& f,
                  std::vector<std::uint64_t>& acc) {
  for (Index j0 = begin; j0 < end; j0 += kColumnTile) {
    const Index w = std::min(kColumnTile, end - j0);
    std::fill(acc.begin(), acc.begin() + w, 0);
    for (std::size_t t = 0; t < coefs.size(); ++t) {
      if (coefs[t] == 0) continue;
      accumulate(acc.data(), coefs[t], sources[t] + j0, w, f);
    }
    std::uint32_t* out = target + j0;
    for (Index j = 0; j < w; ++j) out[j] = f.reduce(acc[j] + out[j]);
  }
}

// targets[i][j] += sum_t coefs[i * T + t] * sources[t][j], T = sources.size().
template <class Fold>
void update_trailing(const std::vector<std::uint32_t*>& targets, const std::vector<std::uint32_t>& coefs,
                     const std::vector<const std::uint32_t*>& sources, Index begin, Index end, const Fold& f,
                     std::vector<std::uint64_t>& acc) {
  const std::size_t T = sources.size();
  std::vector<std::uint32_t> c(T);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    std::copy(coefs.begin() + static_cast<std::ptrdiff_t>(i * T),
              coefs.begin() + static_cast<std::ptrdiff_t>((i + 1) * T), c.begin());
    combine_rows(targets[i], c, sources, begin, end, f, acc);
  }
}

#if defined(__AVX512F__)
// Register-blocked kernel for p = 2^31 - 1: R target rows by 16 columns of uint64 accumulators.
template <int R>
void mersenne_block(std::uint32_t* const* targets, const std::uint32_t* coefs, std::size_t T,
                    const std::uint32_t* const* sources, Index begin, Index end) {
  const __m512i mask = _mm512_set1_epi64(static_cast<long long>(kMersenne31));
  Index j = begin;
  for (; j + 16 <= end; j += 16) {
    __m512i a[R][2];
    for (int r = 0; r < R; ++r) a[r][0] = a[r][1] = _mm512_setzero_si512();
    for (std::size_t t = 0; t < T; ++t) {
      const std::uint32_t* x = sources[t] + j;
      const __m512i x0 = _mm512_cvtepu32_epi64(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(x)));
      const __m512i x1 = _mm512_cvtepu32_epi64(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + 8)));
      for (int r = 0; r < R; ++r) {
        const __m512i c = _mm512_set1_epi64(coefs[static_cast<std::size_t>(r) * T + t]);
        const __m512i p0 = _mm512_mul_epu32(c, x0);
        const __m512i p1 = _mm512_mul_epu32(c, x1);
        a[r][0] = _mm512_add_epi64(a[r][0], _mm512_add_epi64(_mm512_and_si512(p0, mask), _mm512_srli_epi64(p0, 31)));
        a[r][1] = _mm512_add_epi64(a[r][1], _mm512_add_epi64(_mm512_and_si512(p1, mask), _mm512_srli_epi64(p1, 31)));
      }
    }
    for (int r = 0; r < R; ++r) {
      for (int h = 0; h < 2; ++h) {
        std::uint32_t* out = targets[r] + j + 8 * h;
        __m512i v = _mm512_add_epi64(a[r][h], _mm512_cvtepu32_epi64(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(out))));
        v = _mm512_add_epi64(_mm512_and_si512(v, mask), _mm512_srli_epi64(v, 31));
        v = _mm512_add_epi64(_mm512_and_si512(v, mask), _mm512_srli_epi64(v, 31));
        v = _mm512_min_epu64(v, _mm512_sub_epi64(v, mask));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out), _mm512_cvtepi64_epi32(v));
      }
    }
  }
  const MersenneFold f;
  for (; j < end; ++j) {
    for (int r = 0; r < R; ++r) {
      std::uint64_t s = targets[r][j];
      for (std::size_t t = 0; t < T; ++t) s += f.fold(std::uint64_t{coefs[static_cast<std::size_t>(r) * T + t]} * sources[t][j]);
      targets[r][j] = f.reduce(s);
    }
  }
}

template <>
void update_trailing<MersenneFold>(const std::vector<std::uint32_t*>& targets, const std::vector<std::uint32_t>& coefs,
                                   const std::vector<const std::uint32_t*>& sources, Index begin, Index end,
                                   const MersenneFold&, std::vector<std::uint64_t>&) {
  constexpr std::size_t kRows = 8;
  const std::size_t T = sources.size();
  for (Index j0 = begin; j0 < end; j0 += kColumnTile) {
    const Index j1 = std::min(j0 + kColumnTile, end);
    std::size_t i = 0;
    for (; i + kRows <= targets.size(); i += kRows)
      mersenne_block<kRows>(targets.data() + i, coefs.data() + i * T, T, sources.data(), j0, j1);
    for (; i < targets.size(); ++i) mersenne_block<1>(targets.data() + i, coefs.data() + i * T, T, sources.data(), j0, j1);
  }
}
#endif

template <class Fold>
std::vector<Index> eliminate_impl(PrimeFieldMatrix& m, const Fold& fold) {
  const PrimeField& F = m.field();
  const Index rows = m.rows();
  const Index cols = m.cols();
  std::vector<Index> pivots;
  std::vector<std::uint64_t> acc(kColumnTile);
  std::vector<std::uint32_t> row_buf(static_cast<std::size_t>(cols));
  Index r = 0;

  for (Index j0 = 0; j0 < cols && r < rows; j0 += kPanelWidth) {
    const Index j1 = std::min(j0 + kPanelWidth, cols);
    const Index r0 = r;
    std::vector<Index> panel;

    // Unblocked elimination restricted to the panel columns; multipliers overwrite the
    // eliminated entries.
    for (Index c = j0; c < j1 && r < rows; ++c) {
      Index piv = -1;
      for (Index i = r; i < rows; ++i) {
        if (m(i, c) != 0) {
          piv = i;
          break;
        }
      }
      if (piv < 0) continue;
      if (piv != r) {
        std::uint32_t* a = m.row_ptr(r);
        std::uint32_t* b = m.row_ptr(piv);
        std::copy(a, a + cols, row_buf.begin());
        std::copy(b, b + cols, a);
        std::copy(row_buf.begin(), row_buf.end(), b);
      }
      const std::uint32_t* prow = m.row_ptr(r);
      const std::uint32_t inv = F.inv(prow[c]);
      for (Index i = r + 1; i < rows; ++i) {
        std::uint32_t* row = m.row_ptr(i);
        if (row[c] == 0) continue;
        const std::uint32_t f = F.mul(row[c], inv);
        row[c] = f;
        const std::uint32_t nf = F.neg(f);
        for (Index cc = c + 1; cc < j1; ++cc) row[cc] = fold.reduce(std::uint64_t{nf} * prow[cc] + row[cc]);
      }
      panel.push_back(c);
      pivots.push_back(c);
      ++r;
    }

    const Index npiv = r - r0;
    if (npiv == 0 || j1 == cols) continue;

    std::vector<const std::uint32_t*> sources(static_cast<std::size_t>(npiv));
    for (Index t = 0; t < npiv; ++t) sources[static_cast<std::size_t>(t)] = m.row_ptr(r0 + t);

    // Pivot rows: apply the earlier pivots of this panel to the trailing columns.
    std::vector<std::uint32_t> coefs;
    for (Index s = 1; s < npiv; ++s) {
      std::uint32_t* row = m.row_ptr(r0 + s);
      coefs.assign(static_cast<std::size_t>(s), 0);
      bool any = false;
      for (Index t = 0; t < s; ++t) {
        coefs[static_cast<std::size_t>(t)] = F.neg(row[panel[static_cast<std::size_t>(t)]]);
        any |= coefs[static_cast<std::size_t>(t)] != 0;
      }
      if (!any) continue;
      std::vector<const std::uint32_t*> src(sources.begin(), sources.begin() + s);
      combine_rows(row, coefs, src, j1, cols, fold, acc);
    }

    // Remaining rows: rank-npiv update of the trailing block.
    std::vector<std::uint32_t*> targets;
    std::vector<std::uint32_t> target_coefs;
    for (Index i = r; i < rows; ++i) {
      std::uint32_t* row = m.row_ptr(i);
      bool any = false;
      for (Index t = 0; t < npiv; ++t) any |= row[panel[static_cast<std::size_t>(t)]] != 0;
      if (!any) continue;
      targets.push_back(row);
      for (Index t = 0; t < npiv; ++t) target_coefs.push_back(F.neg(row[panel[static_cast<std::size_t>(t)]]));
    }
    update_trailing(targets, target_coefs, sources, j1, cols, fold, acc);
  }
  return pivots;
}

// Back substitution for all free columns at once; X is cols x nfree, row-major.
template <class Fold>
PrimeFieldMatrix kernel_impl(const EchelonForm& e, Index cols, const Fold& fold) {
  const PrimeField& F = e.rows.field();
  std::vector<char> is_pivot(static_cast<std::size_t>(cols), 0);
  for (Index c : e.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = 1;
  std::vector<Index> free_cols;
  for (Index c = 0; c < cols; ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);
  const Index nfree = static_cast<Index>(free_cols.size());

  FpStorage x = FpStorage::Zero(cols, nfree);
  for (Index f = 0; f < nfree; ++f) x(free_cols[static_cast<std::size_t>(f)], f) = 1;

  std::vector<std::uint64_t> acc(static_cast<std::size_t>(nfree));
  for (Index s = e.rank - 1; s >= 0; --s) {
    const Index pc = e.pivot_cols[static_cast<std::size_t>(s)];
    const std::uint32_t* row = e.rows.row_ptr(s);
    std::fill(acc.begin(), acc.end(), 0);
    for (Index j = pc + 1; j < cols; ++j) {
      if (row[j] == 0) continue;
      accumulate(acc.data(), row[j], x.data() + j * nfree, nfree, fold);
    }
    const std::uint32_t scale = F.neg(F.inv(row[pc]));
    std::uint32_t* out = x.data() + pc * nfree;
    for (Index f = 0; f < nfree; ++f) out[f] = F.mul(fold.reduce(acc[static_cast<std::size_t>(f)]), scale);
  }

  PrimeFieldMatrix basis(F, nfree, cols);
  basis.storage() = x.transpose();
  return basis;
}

}  // namespace

PrimeFieldMatrix::PrimeFieldMatrix(PrimeField field, FpStorage data) : field_(field), data_(std::move(data)) {
  const std::uint32_t p = field_.modulus();
  for (Index i = 0; i < data_.size(); ++i) {
    if (data_.data()[i] >= p) throw std::invalid_argument("matrix entry not reduced modulo p");
  }
}

PrimeFieldMatrix PrimeFieldMatrix::identity(PrimeField field, Index n) {
  PrimeFieldMatrix m(field, n, n);
  for (Index i = 0; i < n; ++i) m.storage()(i, i) = 1;
  return m;
}

std::vector<Index> eliminate_in_place(PrimeFieldMatrix& m) {
  if (m.field().is_mersenne31()) return eliminate_impl(m, MersenneFold{});
  return eliminate_impl(m, GenericFold{m.field().modulus()});
}

Index rank(PrimeFieldMatrix m) { return static_cast<Index>(eliminate_in_place(m).size()); }

EchelonForm row_echelon(PrimeFieldMatrix m) {
  std::vector<Index> pivots = eliminate_in_place(m);
  const Index r = static_cast<Index>(pivots.size());
  // Drop garbage rows and clear the multipliers left of each pivot.
  m.storage().conservativeResize(r, m.cols());
  for (Index s = 0; s < r; ++s) {
    std::uint32_t* row = m.row_ptr(s);
    std::fill(row, row + pivots[static_cast<std::size_t>(s)], 0);
  }
  return EchelonForm{r, std::move(pivots), std::move(m)};
}

PrimeFieldMatrix kernel_basis(const EchelonForm& echelon) {
  const Index cols = echelon.rows.cols();
  if (echelon.rows.field().is_mersenne31()) return kernel_impl(echelon, cols, MersenneFold{});
  return kernel_impl(echelon, cols, GenericFold{echelon.rows.field().modulus()});
}

PrimeFieldMatrix kernel_basis(PrimeFieldMatrix m) { return kernel_basis(row_echelon(std::move(m))); }

PrimeFieldMatrix multiply_transposed(const PrimeFieldMatrix& a, const PrimeFieldMatrix& b) {
  if (!(a.field() == b.field())) throw std::invalid_argument("field mismatch");
  if (a.cols() != b.cols()) throw std::invalid_argument("dimension mismatch in multiply_transposed");
  const PrimeField& F = a.field();
  PrimeFieldMatrix out(F, a.rows(), b.rows());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < b.rows(); ++j) {
      std::uint64_t s = 0;
      const std::uint32_t* x = a.row_ptr(i);
      const std::uint32_t* y = b.row_ptr(j);
      for (Index k = 0; k < a.cols(); ++k) s = (s + std::uint64_t{x[k]} * y[k]) % F.modulus();
      out.storage()(i, j) = static_cast<std::uint32_t>(s);
    }
  }
  return out;
}

void write_matrix(std::ostream& out, const PrimeFieldMatrix& m) {
  out << m.rows() << ' ' << m.cols() << ' ' << m.field().modulus() << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
}

PrimeFieldMatrix read_matrix(std::istream& in) {
  long long rows = 0, cols = 0;
  std::uint64_t p = 0;
  if (!(in >> rows >> cols >> p) || rows < 0 || cols < 0 || p > 0xffffffffull)
    throw std::runtime_error("malformed matrix header");
  PrimeFieldMatrix m(PrimeField(static_cast<std::uint32_t>(p)), rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      long long v = 0;
      if (!(in >> v)) throw std::runtime_error("truncated matrix body");
      m.set(i, j, v);
    }
  }
  return m;
}

}  // namespace fatpoints
