#pragma once

#include <array>
#include <vector>

#include "dstab/linalg.hpp"

namespace dstab {

// Sign exponent chi(n, N(alpha), N(beta)) attached to each inequality of
// the sufficient test:
//   n - 1 - N(alpha) even:  chi = n - 1 - (N(beta) + N(alpha)) / 2
//   n - 1 - N(alpha) odd:   chi = floor((n-1-N(beta))/2) + floor((n-1-N(alpha))/2)
// Requires 0 <= n_beta <= n_alpha <= n - 1 and n_alpha == n_beta (mod 2).
int sign_exponent(int n, int n_alpha, int n_beta);

// One admissible (alpha, beta) pair for a given pivot.
struct AlphaBeta {
  IndexSet alpha;
  IndexSet beta;
};

// All pairs beta <= alpha <= [n] \ {k} with 1 <= N(alpha) <= n - 1 and
// N(beta) running over {0, 2, ..., N(alpha)} or {1, 3, ..., N(alpha)}
// according to the parity of N(alpha).  Deterministic order: by N(alpha),
// then alpha's label tuple, then N(beta), then beta's label tuple.
// Counts: 4 pairs at n = 3, 13 at n = 4 (for any pivot).
std::vector<AlphaBeta> inequality_pairs(int n, int k);

// Variant over an arbitrary support set: pairs inside `support` (which
// plays the role of [n] \ {k}) with the level size |support| + 1 driving
// the cardinality bounds.  Used by the recursive certifier, where minors
// of a nested principal submatrix are minors of the original matrix.
std::vector<AlphaBeta> inequality_pairs_over(const IndexSet& support);

// One evaluated inequality instance.
struct MinorInequality {
  int pivot = 0;      // 1-based label k
  IndexSet alpha;
  IndexSet beta;
  int chi = 0;        // sign exponent used
  Rational value;     // exact left-hand side
  bool satisfied = false;  // value >= 0
};

// Exact value of the pivot-k inequality for (alpha, beta):
//   (1/m_kk) * sum over gamma <= alpha \ beta of
//       (-1)^(chi + N(gamma)) * M(alpha\gamma) * M(beta|gamma|{k})
// `level_size` is the dimension of the (sub)problem the inequality belongs
// to (the ambient matrix size for a top-level test); it drives chi.
// All minors are read from `table`, which must be the minor table of the
// full matrix m.  Requires m_kk != 0.
MinorInequality inequality_value(const Matrix& m, int k, const IndexSet& alpha,
                                 const IndexSet& beta, const MinorTable& table,
                                 int level_size);

// Per-pivot family evaluation over the full matrix.
struct PivotTest {
  // False when m[k][k] == 0, in which case no instances are evaluated
  // (the test is inapplicable rather than violated).
  bool applicable = false;
  bool all_satisfied = false;
  std::vector<MinorInequality> instances;
};

// Evaluates every admissible (alpha, beta) pair for pivot k on the whole
// matrix.  Violated instances stay in place with satisfied = false.
PivotTest pivot_test(const Matrix& m, int k, const MinorTable& table);

// Closed-form D-stability for n <= 2: n = 1 requires m11 < 0; n = 2
// requires Hurwitz stability, m11 <= 0, m22 <= 0 and det > 0.  Throws
// DimensionError for n > 2.
bool base_dstable(const Matrix& m);

// For 3x3 matrices: the three single-pivot inequalities (pivot 3, 2, 1 with
// alpha the complementary pair and beta empty); any one of them certifies
// D-stability when m is Hurwitz stable and -m is a P-matrix.
struct ThreePivotConditions {
  // True when the hypotheses hold (m stable, -m a P-matrix, diagonal
  // nonzero); the values are reported either way.
  bool applicable = false;
  std::array<Rational, 3> values;  // pivots 3, 2, 1 in that order
  bool any_satisfied = false;
};

ThreePivotConditions sufficient_3x3(const Matrix& m);

// For 4x4 matrices with m44 != 0: the reduced two-index form
//   -M(ij) + (m_ii/m44) M(j4) + (m_jj/m44) M(i4) - (1/m44) M(ij4) >= 0,
// identical to the pivot-4 inequality with alpha = {i,j}, beta = {}.
MinorInequality reduced_pair_inequality(const Matrix& m, int i, int j,
                                        const MinorTable& table);

// The reduced three-index form for i in {1,2,3} with {j,k} its complement
// in {1,2,3}:
//   E_i = M(ij) M(ik4) + M(ik) M(ij4) - M(123) M(i4) - m_ii det(M),
// satisfied when E_i <= 0.  Equals m44 times the pivot-4 inequality with
// alpha = {1,2,3}, beta = {i}.
struct ReducedTriple {
  int i = 0;
  Rational value;          // E_i
  bool satisfied = false;  // E_i <= 0
};

ReducedTriple reduced_triple_inequality(const Matrix& m, int i,
                                        const MinorTable& table);

}  // namespace dstab
