#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dstab/linalg.hpp"

namespace dstab {

// Real part of det(M + i*diag(d)) as a signed sum of principal minors:
//   sum over even subsets S of (-1)^(|S|/2) * M([n] \ S) * prod_{i in S} d_i.
Rational re_det_minor_sum(const Matrix& m, const std::vector<Rational>& d,
                          const MinorTable& table);

// Imaginary part: odd subsets S with sign (-1)^((|S|-1)/2).
Rational im_det_minor_sum(const Matrix& m, const std::vector<Rational>& d,
                          const MinorTable& table);

// Exact check of the determinant expansion across the last pivot:
//   det(M +- i*D) = (+-i) d_n det(M|n +- i*D|n) + m_nn det(B +- i*D|n)
// with B the Schur complement of m_nn.  Both signs are verified.
enum class ExpansionCheck {
  Holds,                 // identity verified exactly for both signs
  ZeroPivot,             // m_nn == 0: expansion undefined
  SingularLeadingBlock,  // det(M|n + i*D|n) == 0: hypothesis violated
};

ExpansionCheck pivot_expansion_check(const Matrix& m, const std::vector<Rational>& d);

// Polynomial in the n-1 scaling variables attached to the labels of
// [n] \ {k} in ascending order; every exponent is 0, 1 or 2.  Monomial
// keys are exponent vectors.
struct ScalingPoly {
  int vars = 0;
  std::map<std::vector<std::uint8_t>, Rational> terms;

  Rational coefficient(const std::vector<std::uint8_t>& monomial) const;
  Rational eval(const std::vector<Rational>& d) const;
};

// Exact value at a point d > 0 (length n-1) of the crossing form
//   F(d) = Re(det(A_k + iD)) * Re(det(B_k + iD))
//        + Im(det(A_k + iD)) * Im(det(B_k + iD))
// where A_k = M with row/column k deleted and B_k its Schur complement
// counterpart (expressed through minors of M; the Schur matrix is never
// formed).  F > 0 on the whole open positive orthant certifies that no
// positive scaling of M puts an eigenvalue on the imaginary axis, given
// the descent hypotheses.  Requires m_kk != 0.
Rational crossing_form_value(const Matrix& m, int k,
                             const std::vector<Rational>& d,
                             const MinorTable& table);

// Symbolic expansion of the same form (guarded at n <= 7).  The
// coefficient of the monomial with exponent 0 on beta, 1 on alpha \ beta
// and 2 outside alpha equals the (alpha, beta) pivot inequality value; the
// all-twos monomial has coefficient 1.
ScalingPoly crossing_form_expand(const Matrix& m, int k, const MinorTable& table);

// One sampled positive diagonal.
struct DiagonalSample {
  std::vector<double> entries;
  std::uint64_t seed = 0;
  std::int64_t trial_index = 0;  // negative indices are the fixed probes
};

struct CounterexampleReport {
  std::optional<DiagonalSample> found;
  double abscissa = 0.0;  // of diag(D) * M for the found sample
  double margin = 0.0;    // abscissa - 1e-6
  std::int64_t trials_run = 0;
  std::int64_t eigen_failures = 0;
};

// Randomized search for a positive diagonal D with diag(D)*M unstable.
// Deterministic given (seed, trials): fixed probes first (all-ones and,
// per position, one entry pushed to 10^3 / 10^-3), then per-trial
// log-uniform samples over [10^-3, 10^3], each trial's generator seeded by
// (seed, trial index).  A candidate counts only when the float abscissa
// clears +1e-6; candidates in (0, 1e-6) are re-checked in quadruple
// precision and kept only if the margin survives.  The reported hit is the
// earliest probe/trial index regardless of thread count.
CounterexampleReport search_counterexample(const Matrix& m, std::int64_t trials,
                                           std::uint64_t seed);

}  // namespace dstab
