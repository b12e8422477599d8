#include "dstab/linalg.hpp"

#include <string>
#include <utility>

namespace dstab {

ComplexRational operator/(const ComplexRational& a, const ComplexRational& b) {
  if (b.is_zero()) throw SingularError("complex division by zero");
  const Rational norm = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / norm, (a.im * b.re - a.re * b.im) / norm};
}

namespace {

// Fraction-free Bareiss determinant of an integer matrix.  Destroys z.
mpz_class bareiss_det(std::vector<mpz_class>& z, int n) {
  auto at = [&](int i, int j) -> mpz_class& {
    return z[static_cast<std::size_t>(i) * n + j];
  };
  int sign = 1;
  mpz_class prev(1);
  mpz_class t;
  for (int c = 0; c < n - 1; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r) {
      if (at(r, c) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return 0;
    if (pivot != c) {
      for (int j = c; j < n; ++j) std::swap(at(c, j), at(pivot, j));
      sign = -sign;
    }
    for (int r = c + 1; r < n; ++r) {
      for (int j = c + 1; j < n; ++j) {
        // Bareiss one-step update: exact integer division by the previous
        // pivot keeps every intermediate entry a minor of the input.
        t = at(r, j) * at(c, c) - at(r, c) * at(c, j);
        mpz_divexact(at(r, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      at(r, c) = 0;
    }
    prev = at(c, c);
  }
  mpz_class result = at(n - 1, n - 1);
  if (sign < 0) result = -result;
  return result;
}

}  // namespace

Rational det(const Matrix& m) {
  const int n = m.size();
  if (n == 1) return m.at(0, 0);

  // Clear denominators row by row; det(M) = bareiss(Z) / prod(row scales).
  std::vector<mpz_class> z(static_cast<std::size_t>(n) * n);
  mpz_class scale(1);
  mpz_class row_lcm, t;
  for (int i = 0; i < n; ++i) {
    row_lcm = 1;
    for (int j = 0; j < n; ++j) {
      mpz_lcm(row_lcm.get_mpz_t(), row_lcm.get_mpz_t(), m.at(i, j).den().get_mpz_t());
    }
    for (int j = 0; j < n; ++j) {
      const Rational& e = m.at(i, j);
      mpz_divexact(t.get_mpz_t(), row_lcm.get_mpz_t(), e.den().get_mpz_t());
      z[static_cast<std::size_t>(i) * n + j] = e.num() * t;
    }
    scale *= row_lcm;
  }
  mpq_class result(bareiss_det(z, n), scale);
  result.canonicalize();
  return Rational(result);
}

Rational principal_minor(const Matrix& m, const IndexSet& alpha) {
  if (alpha.ambient() != m.size()) {
    throw DimensionError("index set ambient dimension mismatch");
  }
  if (alpha.is_empty()) return Rational(1);
  return det(m.select(alpha));
}

MinorTable MinorTable::compute(const Matrix& m) {
  const int n = m.size();
  std::vector<Rational> v(std::size_t{1} << n);
  for_each_subset(IndexSet::full(n), [&](const IndexSet& s) {
    v[s.mask()] = principal_minor(m, s);
  });
  return MinorTable(n, std::move(v));
}

const Rational& MinorTable::operator[](const IndexSet& s) const {
  if (s.ambient() != n_) {
    throw DimensionError("index set ambient dimension mismatch");
  }
  return v_[s.mask()];
}

Matrix schur_complement(const Matrix& m, int k) {
  const int n = m.size();
  if (k < 1 || k > n) throw DimensionError("pivot label out of range");
  if (n < 2) throw DimensionError("Schur complement needs n >= 2");
  const Rational& pivot = m.at(k - 1, k - 1);
  if (pivot.is_zero()) {
    throw SingularError("zero pivot entry for Schur complement at " + std::to_string(k));
  }
  const std::vector<int> keep = IndexSet::full(n).without(k).labels();
  Matrix b(n - 1);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (std::size_t j = 0; j < keep.size(); ++j) {
      const int bi = keep[i] - 1;
      const int bj = keep[j] - 1;
      b.at(static_cast<int>(i), static_cast<int>(j)) =
          m.at(bi, bj) - m.at(bi, k - 1) * m.at(k - 1, bj) / pivot;
    }
  }
  return b;
}

ComplexRational complex_det(const Matrix& m, const std::vector<Rational>& d, int sign) {
  const int n = m.size();
  if (static_cast<int>(d.size()) != n) {
    throw DimensionError("diagonal length does not match matrix dimension");
  }
  if (sign != 1 && sign != -1) throw DimensionError("sign must be +1 or -1");

  std::vector<ComplexRational> z(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Rational im = (i == j) ? (sign > 0 ? d[static_cast<std::size_t>(i)]
                                         : -d[static_cast<std::size_t>(i)])
                             : Rational(0);
      z[static_cast<std::size_t>(i) * n + j] = ComplexRational(m.at(i, j), std::move(im));
    }
  }
  auto at = [&](int i, int j) -> ComplexRational& {
    return z[static_cast<std::size_t>(i) * n + j];
  };

  // Plain Gaussian elimination over the exact complex-rational field.
  ComplexRational result(Rational(1), Rational(0));
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r) {
      if (!at(r, c).is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return ComplexRational(Rational(0), Rational(0));
    if (pivot != c) {
      for (int j = c; j < n; ++j) std::swap(at(c, j), at(pivot, j));
      result = ComplexRational(Rational(0), Rational(0)) - result;
    }
    result = result * at(c, c);
    for (int r = c + 1; r < n; ++r) {
      if (at(r, c).is_zero()) continue;
      const ComplexRational factor = at(r, c) / at(c, c);
      for (int j = c + 1; j < n; ++j) {
        at(r, j) = at(r, j) - factor * at(c, j);
      }
      at(r, c) = ComplexRational(Rational(0), Rational(0));
    }
  }
  return result;
}

}  // namespace dstab
