#pragma once

// Shared fixtures and independent reference implementations for the test
// suite.  The reference routines here are deliberately naive (cofactor
// expansion, plain Gaussian solves) so they cannot share a bug with the
// library's fraction-free elimination.

#include <random>
#include <vector>

#include "dstab/linalg.hpp"

namespace testsupport {

using dstab::IndexSet;
using dstab::Matrix;
using dstab::Rational;

// 3x3 matrix that is D-stable (diagonally dominant-ish, stable) but is not
// caught by the sufficient inequality family: a known blind spot.
inline Matrix missed_3x3() {
  return Matrix::from_rows({
      {Rational(-6), Rational(-5), Rational(1)},
      {Rational(-1), Rational(-2), Rational(-5)},
      {Rational(-5), Rational(3), Rational(-1)},
  });
}

// Lower-triangular family of -1s with one parameter in the upper corner.
inline Matrix corner_param_3x3(const Rational& q) {
  return Matrix::from_rows({
      {Rational(-1), Rational(0), q},
      {Rational(-1), Rational(-1), Rational(0)},
      {Rational(-1), Rational(-1), Rational(-1)},
  });
}

// The 4x4 extension with two corner parameters.
inline Matrix corner_param_4x4(const Rational& p, const Rational& q) {
  return Matrix::from_rows({
      {Rational(-1), Rational(0), q, p},
      {Rational(-1), Rational(-1), Rational(0), Rational(0)},
      {Rational(-1), Rational(-1), Rational(-1), Rational(0)},
      {Rational(-1), Rational(-1), Rational(-1), Rational(-1)},
  });
}

// Hurwitz stable, but a positive scaling flips an eigenvalue: diag(4, 1)
// already destabilizes it.
inline Matrix not_dstable_2x2() {
  return Matrix::from_rows({
      {Rational(1), Rational(-4)},
      {Rational(2), Rational(-3)},
  });
}

inline Rational random_rational(std::mt19937_64& rng, int num_range, int den_max) {
  std::uniform_int_distribution<long> num(-num_range, num_range);
  std::uniform_int_distribution<long> den(1, den_max);
  return Rational(num(rng), den(rng));
}

inline Matrix random_matrix(std::mt19937_64& rng, int n, int num_range = 9,
                            int den_max = 3) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m.at(i, j) = random_rational(rng, num_range, den_max);
    }
  }
  return m;
}

// Random matrix with a strictly negative, dominant-ish diagonal; a cheap
// way to hit Hurwitz-stable samples often.
inline Matrix random_stableish_matrix(std::mt19937_64& rng, int n) {
  Matrix m = random_matrix(rng, n, 2, 2);
  std::uniform_int_distribution<long> diag(2, 6);
  for (int i = 0; i < n; ++i) m.at(i, i) = Rational(-diag(rng), 1);
  return m;
}

// Submatrix with one row and one column removed (0-based positions).
inline Matrix erase_row_col(const Matrix& m, int row, int col) {
  const int n = m.size();
  Matrix out(n - 1);
  int oi = 0;
  for (int i = 0; i < n; ++i) {
    if (i == row) continue;
    int oj = 0;
    for (int j = 0; j < n; ++j) {
      if (j == col) continue;
      out.at(oi, oj) = m.at(i, j);
      ++oj;
    }
    ++oi;
  }
  return out;
}

// Reference determinant by cofactor expansion along the first row.
inline Rational cofactor_det(const Matrix& m) {
  const int n = m.size();
  if (n == 1) return m.at(0, 0);
  Rational acc(0);
  for (int j = 0; j < n; ++j) {
    if (m.at(0, j).is_zero()) continue;
    Rational term = m.at(0, j) * cofactor_det(erase_row_col(m, 0, j));
    if (j % 2 != 0) term = -term;
    acc += term;
  }
  return acc;
}

// Exact solve of m * x = b by plain Gaussian elimination; returns false on
// a singular system.
inline bool solve(const Matrix& m, std::vector<Rational> b, std::vector<Rational>& x) {
  const int n = m.size();
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i)].push_back(m.at(i, j));
  }
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r) {
      if (!a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return false;
    std::swap(a[static_cast<std::size_t>(c)], a[static_cast<std::size_t>(pivot)]);
    std::swap(b[static_cast<std::size_t>(c)], b[static_cast<std::size_t>(pivot)]);
    for (int r = c + 1; r < n; ++r) {
      if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].is_zero()) continue;
      const Rational f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] /
                         a[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
      for (int j = c; j < n; ++j) {
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -=
            f * a[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
      }
      b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(c)];
    }
  }
  x.assign(static_cast<std::size_t>(n), Rational(0));
  for (int i = n - 1; i >= 0; --i) {
    Rational acc = b[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) {
      acc -= a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
             x[static_cast<std::size_t>(j)];
    }
    x[static_cast<std::size_t>(i)] =
        acc / a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
  }
  return true;
}

// Symmetric permutation: out[i][j] = m[perm[i]][perm[j]] (0-based perm).
inline Matrix permuted(const Matrix& m, const std::vector<int>& perm) {
  Matrix out(m.size());
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) {
      out.at(i, j) = m.at(perm[static_cast<std::size_t>(i)],
                          perm[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

}  // namespace testsupport
