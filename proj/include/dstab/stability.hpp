#pragma once

#include <optional>
#include <vector>

#include "dstab/linalg.hpp"

namespace dstab {

// Characteristic polynomial det(M - lambda*I) with exact coefficients
// stored ascending: coeff[j] multiplies lambda^j.  The leading coefficient
// is (-1)^n and coeff[0] = det(M).
struct CharPoly {
  std::vector<Rational> coeff;

  int degree() const { return static_cast<int>(coeff.size()) - 1; }
  Rational eval(const Rational& x) const;
};

// Computed by the Faddeev-LeVerrier recurrence (exact over rationals).
// Independent of MinorTable, so the signed-minor-sum identity
//   coeff[j] = (-1)^j * sum of principal minors of order n-j
// is a meaningful cross-check rather than a tautology.
CharPoly char_poly(const Matrix& m);

// Exact Hurwitz stability report.
struct HurwitzReport {
  bool stable = false;
  // True when some Hurwitz determinant is exactly zero (degenerate test);
  // such matrices are reported as not stable.
  bool boundary = false;
  // Leading principal minors of the Hurwitz matrix, Delta_1 .. Delta_n, for
  // the polynomial normalized to a positive leading coefficient.
  std::vector<Rational> determinants;
};

// Re(lambda) < 0 for every eigenvalue, decided exactly via the Hurwitz
// determinant criterion on char_poly(M).
HurwitzReport hurwitz_stable(const Matrix& m);

// Principal-minor class flags: P (all principal minors positive), P0 (all
// nonnegative), P0+ (P0 and, for every order k, the sum of all order-k
// principal minors is positive).
struct PClassReport {
  bool is_P = false;
  bool is_P0 = false;
  bool is_P0_plus = false;
  // Sum of principal minors per order, index 0 <-> order 1.
  std::vector<Rational> order_sums;
  // First subset (by cardinality, then labels) whose minor breaks P (<= 0)
  // or P0 (< 0); present iff the corresponding flag is false.
  std::optional<IndexSet> witness;
  // First order whose minor sum is <= 0 when P0 holds but P0+ fails.
  std::optional<int> failing_order;
};

PClassReport classify_p(const Matrix& m);

// Necessary condition for D-stability: -M must be a P0+ matrix.  Returns
// the classification of -M plus the pass/fail verdict.
struct NecessaryReport {
  bool ok = false;
  PClassReport neg_class;
};

NecessaryReport necessary_dstability(const Matrix& m);

// Largest real part over the eigenvalues of M, computed in floating point
// (balanced real Schur iteration, cap 500 iterations).  Throws
// EigenvalueError on non-convergence.
double spectral_abscissa(const Matrix& m);

// Same, for diag(d) * M with a floating-point diagonal (oracle hot path).
double spectral_abscissa_scaled(const Matrix& m, const std::vector<double>& d);

// Quadruple-precision variant used to adjudicate near-threshold
// counterexample candidates; result narrowed back to double.
double spectral_abscissa_scaled_quad(const Matrix& m, const std::vector<double>& d);

}  // namespace dstab
