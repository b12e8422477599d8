#pragma once

#include <vector>

#include "dstab/index_set.hpp"
#include "dstab/rational.hpp"

namespace dstab {

// Dense square matrix of exact rationals, 1 <= n <= kMaxDim.
// Storage access (at) is 0-based; index-set / pivot arguments elsewhere in
// the library use 1-based labels, converted explicitly at the boundary.
class Matrix {
 public:
  explicit Matrix(int n);

  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows);
  static Matrix identity(int n);
  static Matrix diagonal(const std::vector<Rational>& d);

  int size() const { return n_; }

  Rational& at(int i, int j) { return a_[index(i, j)]; }
  const Rational& at(int i, int j) const { return a_[index(i, j)]; }

  // Principal submatrix on the labels of `s`, rows/columns in ascending
  // label order.
  Matrix select(const IndexSet& s) const;

  // Principal submatrix with row/column `label` removed (1-based).
  Matrix drop(int label) const;

  Matrix negated() const;

  // Entrywise row scaling: row i multiplied by d[i] (i.e. diag(d) * M).
  Matrix row_scaled(const std::vector<Rational>& d) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.n_ == b.n_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  std::size_t index(int i, int j) const;

  int n_;
  std::vector<Rational> a_;
};

}  // namespace dstab
