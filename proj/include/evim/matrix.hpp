// Dense exact rational matrices and the elimination toolkit: RREF, rank,
// canonical image/kernel bases, solving, inverse, determinant. Subspaces are
// represented by matrices whose columns are basis vectors; the canonical form
// is "rows of the transpose are in reduced row echelon form", which makes
// subspace equality a plain matrix comparison.
#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evim/error.hpp"
#include "evim/rational.hpp"

namespace evim {

class RatMatrix {
 public:
  RatMatrix() : rows_(0), cols_(0) {}
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

  RatMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw invalid_input("ragged matrix literal");
      for (long v : r) a_.emplace_back(v);
    }
  }

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const RatMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const RatMatrix& o) const { return !(*this == o); }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  RatMatrix operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_) throw invalid_input("matrix product shape mismatch");
    RatMatrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rat& x = at(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) p.at(i, j) += x * o.at(k, j);
      }
    return p;
  }

  RatMatrix operator+(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw invalid_input("matrix sum shape mismatch");
    RatMatrix s(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] = a_[i] + o.a_[i];
    return s;
  }

  RatMatrix operator-(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw invalid_input("matrix diff shape mismatch");
    RatMatrix s(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] = a_[i] - o.a_[i];
    return s;
  }

  RatMatrix operator*(const Rat& c) const {
    RatMatrix s(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] = a_[i] * c;
    return s;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }

  bool is_square() const { return rows_ == cols_; }

  RatMatrix pow(std::uint64_t e) const {
    if (!is_square()) throw invalid_input("power of a non-square matrix");
    RatMatrix acc = identity(rows_);
    RatMatrix base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  RatMatrix column(std::size_t j) const {
    RatMatrix c(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c.at(i, 0) = at(i, j);
    return c;
  }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? "; " : "";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) s += ",";
        s += rat_str(at(i, j));
      }
    }
    return s + "]";
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Rat> a_;
};

inline RatMatrix hcat(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows()) throw invalid_input("hcat row mismatch");
  RatMatrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
  }
  return m;
}

// In-place reduced row echelon form; returns the pivot column indices.
inline std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m.at(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(row, j));
    Rat inv = m.at(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) /= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m.at(i, col) == 0) continue;
      Rat c = m.at(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) -= c * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(RatMatrix m) { return rref(m).size(); }

// Canonical basis of the column space: columns of the result; the transposed
// stack of those columns is the RREF of the row space of m^T.
inline RatMatrix image_basis(const RatMatrix& m) {
  RatMatrix t = m.transpose();
  auto pivots = rref(t);
  RatMatrix b(m.rows(), pivots.size());
  for (std::size_t k = 0; k < pivots.size(); ++k)
    for (std::size_t i = 0; i < m.rows(); ++i) b.at(i, k) = t.at(k, i);
  return b;
}

// Canonical form for a list of spanning columns.
inline RatMatrix span_columns(const RatMatrix& cols) { return image_basis(cols); }

// Canonical basis of ker(m), columns of the result.
inline RatMatrix kernel_basis(const RatMatrix& m) {
  RatMatrix r = m;
  auto pivots = rref(r);
  std::vector<std::size_t> free_cols;
  {
    std::size_t pi = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (pi < pivots.size() && pivots[pi] == j)
        ++pi;
      else
        free_cols.push_back(j);
    }
  }
  RatMatrix raw(m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    raw.at(free_cols[k], k) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) raw.at(pivots[i], k) = -r.at(i, free_cols[k]);
  }
  return span_columns(raw);
}

// Exact solution of A X = B; free variables are set to zero. nullopt when
// inconsistent.
inline std::optional<RatMatrix> solve(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows()) throw invalid_input("solve shape mismatch");
  RatMatrix aug = hcat(a, b);
  auto pivots = rref(aug);
  for (const auto p : pivots)
    if (p >= a.cols()) return std::nullopt;
  RatMatrix x(a.cols(), b.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x.at(pivots[i], j) = aug.at(i, a.cols() + j);
  return x;
}

inline std::optional<RatMatrix> inverse(const RatMatrix& m) {
  if (!m.is_square()) return std::nullopt;
  auto x = solve(m, RatMatrix::identity(m.rows()));
  if (!x) return std::nullopt;
  if (m * *x != RatMatrix::identity(m.rows())) return std::nullopt;
  return x;
}

inline Rat det(const RatMatrix& m) {
  if (!m.is_square()) throw invalid_input("determinant of a non-square matrix");
  RatMatrix a = m;
  Rat d(1);
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a.at(p, col) == 0) ++p;
    if (p == n) return Rat(0);
    if (p != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(p, j), a.at(col, j));
      d = -d;
    }
    d *= a.at(col, col);
    Rat inv = a.at(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a.at(i, col) == 0) continue;
      Rat c = a.at(i, col) / inv;
      for (std::size_t j = col; j < n; ++j) a.at(i, j) -= c * a.at(col, j);
    }
  }
  return d;
}

// ----- subspace helpers (bases are canonical column matrices) -----

inline std::size_t subspace_dim(const RatMatrix& basis) { return basis.cols(); }

inline bool subspace_contains(const RatMatrix& basis, const RatMatrix& v) {
  if (basis.cols() == 0) return v.is_zero();
  return solve(basis, v).has_value();
}

inline bool subspace_leq(const RatMatrix& a, const RatMatrix& b) {
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!subspace_contains(b, a.column(j))) return false;
  return true;
}

inline bool subspace_equal(const RatMatrix& a, const RatMatrix& b) { return a == b; }

inline RatMatrix subspace_sum(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows()) throw invalid_input("subspace sum in different ambient spaces");
  return span_columns(hcat(a, b));
}

}  // namespace evim
