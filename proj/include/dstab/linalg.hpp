#pragma once

#include <vector>

#include "dstab/matrix.hpp"

namespace dstab {

// Exact complex number with rational real and imaginary parts.
struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() = default;
  ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  // Exact division; throws SingularError when b == 0.
  friend ComplexRational operator/(const ComplexRational& a, const ComplexRational& b);

  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const ComplexRational& a, const ComplexRational& b) {
    return !(a == b);
  }
};

// Exact determinant via fraction-free Bareiss elimination on a row-scaled
// integer matrix (each row cleared of denominators, the scale divided back
// out at the end).
Rational det(const Matrix& m);

// Principal minor M(alpha; alpha); the empty set yields 1 by convention.
Rational principal_minor(const Matrix& m, const IndexSet& alpha);

// All 2^n principal minors of a matrix, indexed by subset bitmask.
class MinorTable {
 public:
  static MinorTable compute(const Matrix& m);

  int dim() const { return n_; }
  const Rational& operator[](const IndexSet& s) const;
  const Rational& by_mask(std::uint32_t mask) const { return v_[mask]; }

 private:
  MinorTable(int n, std::vector<Rational> v) : n_(n), v_(std::move(v)) {}

  int n_;
  std::vector<Rational> v_;
};

// Schur complement of the 1x1 pivot block m[k][k] (1-based label k):
// b_ij = m_ij - m_ik * m_kj / m_kk on the surviving labels in ascending
// order.  Equivalently b_ij = M(i k; j k) / m_kk with (i, k)/(j, k) read as
// row/column sequences.  Throws SingularError when the pivot is zero.
Matrix schur_complement(const Matrix& m, int k);

// det(M + sign * i * diag(d)) over exact complex rationals.  `sign` must be
// +1 or -1; d may be any rational vector of length n (positivity is a
// property of the scaling semantics, not of this determinant).
ComplexRational complex_det(const Matrix& m, const std::vector<Rational>& d, int sign);

}  // namespace dstab
