#ifndef RRSURF_LINALG_HPP
#define RRSURF_LINALG_HPP

// Dense matrices over a finite field: reduced row echelon form, rank,
// kernels and subspace comparisons. Row-major storage.

#include <cstddef>
#include <vector>

#include "rrsurf/fields.hpp"

namespace rrsurf {

class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldDesc f, std::size_t rows, std::size_t cols)
      : field_(std::move(f)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  const FieldDesc& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Elem& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  std::vector<Elem> row(std::size_t r) const {
    return {a_.begin() + static_cast<std::ptrdiff_t>(r * cols_), a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
  }

  static Matrix from_rows(const FieldDesc& f, const std::vector<std::vector<Elem>>& rows, std::size_t cols) {
    Matrix m(f, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols && c < rows[r].size(); ++c) m(r, c) = rows[r][c];
    return m;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Matrix operator*(const Matrix& b) const {
    Matrix out(field_, rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Elem x = (*this)(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = field_.add(out(i, j), field_.mul(x, b(k, j)));
      }
    return out;
  }

  /// In-place RREF; returns pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && (*this)(p, c) == 0) ++p;
      if (p == rows_) continue;
      if (p != r)
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(r, j));
      const Elem inv = field_.inv((*this)(r, c));
      for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = field_.mul((*this)(r, j), inv);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r) continue;
        const Elem f = (*this)(i, c);
        if (f == 0) continue;
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = field_.sub((*this)(i, j), field_.mul(f, (*this)(r, j)));
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

 private:
  FieldDesc field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> a_;
};

inline std::size_t rank(Matrix m) { return m.rref().size(); }

/// Basis of the right kernel {v : M v = 0}.
inline std::vector<std::vector<Elem>> nullspace(Matrix m) {
  const FieldDesc f = m.field();
  const std::size_t n = m.cols();
  std::vector<std::size_t> piv = m.rref();
  std::vector<bool> is_pivot(n, false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<std::vector<Elem>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = f.neg(m(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Rank of a list of row vectors of common length.
inline std::size_t span_rank(const FieldDesc& f, const std::vector<std::vector<Elem>>& vecs, std::size_t dim) {
  if (vecs.empty()) return 0;
  return rank(Matrix::from_rows(f, vecs, dim));
}

/// True iff the spans of `a` and `b` coincide.
inline bool same_span(const FieldDesc& f, const std::vector<std::vector<Elem>>& a,
                      const std::vector<std::vector<Elem>>& b, std::size_t dim) {
  const std::size_t ra = span_rank(f, a, dim), rb = span_rank(f, b, dim);
  if (ra != rb) return false;
  std::vector<std::vector<Elem>> both = a;
  both.insert(both.end(), b.begin(), b.end());
  return span_rank(f, both, dim) == ra;
}

}  // namespace rrsurf

#endif  // RRSURF_LINALG_HPP
