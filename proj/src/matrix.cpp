#include "dstab/matrix.hpp"

#include <string>

namespace dstab {

Matrix::Matrix(int n) : n_(n) {
  if (n < 1 || n > kMaxDim) {
    throw DimensionError("matrix dimension out of range: " + std::to_string(n));
  }
  a_.assign(static_cast<std::size_t>(n) * n, Rational(0));
}

std::size_t Matrix::index(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_) {
    throw DimensionError("matrix access out of range (" + std::to_string(i) +
                         "," + std::to_string(j) + ") for n=" + std::to_string(n_));
  }
  return static_cast<std::size_t>(i) * n_ + j;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  const int n = static_cast<int>(rows.size());
  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      throw DimensionError("matrix rows must all have length " + std::to_string(n));
    }
    for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::identity(int n) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Rational(1);
  return m;
}

Matrix Matrix::diagonal(const std::vector<Rational>& d) {
  Matrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.size(); ++i) m.at(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

Matrix Matrix::select(const IndexSet& s) const {
  if (s.ambient() != n_) {
    throw DimensionError("index set ambient dimension mismatch");
  }
  const std::vector<int> labels = s.labels();
  if (labels.empty()) throw DimensionError("cannot select an empty submatrix");
  Matrix m(static_cast<int>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = 0; j < labels.size(); ++j) {
      m.at(static_cast<int>(i), static_cast<int>(j)) =
          at(labels[i] - 1, labels[j] - 1);
    }
  }
  return m;
}

Matrix Matrix::drop(int label) const {
  return select(IndexSet::full(n_).without(label));
}

Matrix Matrix::negated() const {
  Matrix m(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) m.at(i, j) = -at(i, j);
  }
  return m;
}

Matrix Matrix::row_scaled(const std::vector<Rational>& d) const {
  if (static_cast<int>(d.size()) != n_) {
    throw DimensionError("row scaling vector has wrong length");
  }
  Matrix m(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) m.at(i, j) = d[static_cast<std::size_t>(i)] * at(i, j);
  }
  return m;
}

}  // namespace dstab
