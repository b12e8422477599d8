#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dstab/inequality.hpp"
#include "dstab/stability.hpp"

namespace dstab {

// Ordered list of deleted pivot labels (original matrix labels).  A full
// chain for an n x n matrix has length n - 2, stopping at a 2 x 2 block;
// with an assumed level it stops earlier.
using PivotChain = std::vector<int>;

enum class CertificateKind {
  DStable,          // certified D-stable
  NotStable,        // Hurwitz test failed (possibly on the boundary)
  NecessaryFailed,  // -M is not a P0+ matrix
  Counterexample,   // a positive scaling with an unstable product is known
  Inconclusive,     // the sufficient test failed along every chain tried
};

std::string to_string(CertificateKind kind);

// One certified level of a chain: the pivot inequalities evaluated on the
// principal submatrix indexed by `support` | {pivot} (original labels).
struct ChainLevel {
  int level_size = 0;   // dimension of the submatrix at this level
  int pivot = 0;        // deleted label
  std::vector<MinorInequality> instances;  // original-label alpha/beta
};

// Terminal block of a chain.
struct BaseRecord {
  IndexSet indices;     // surviving original labels
  bool assumed = false; // accepted by flag rather than checked
  // When checked: no positive diagonal scaling puts an eigenvalue of the
  // block on the imaginary axis (exact closed form at sizes 1 and 2).
  bool axis_clear = false;
};

// Outcome of one attempted top-level pivot in an inconclusive search.
struct PivotAttempt {
  int pivot = 0;
  enum class Status { ZeroPivot, Violated, SubmatrixFailed } status;
  // Present for Violated: the full instance list with violations marked.
  std::vector<MinorInequality> instances;
};

struct Certificate {
  CertificateKind kind = CertificateKind::Inconclusive;
  HurwitzReport stability;
  std::optional<NecessaryReport> necessary;  // absent when not reached
  PivotChain chain;                          // for DStable
  std::vector<ChainLevel> levels;            // for DStable
  std::optional<BaseRecord> base;            // for DStable with n >= 3
  std::vector<PivotAttempt> attempts;        // for Inconclusive
  std::vector<Rational> counterexample_d;    // for Counterexample
  // All successful chains, populated only under the exhaustive policy.
  std::vector<PivotChain> all_chains;
};

struct CertifyOptions {
  // Follow exactly this chain instead of searching.  Length must be
  // n - assume_level (or n - 2 without an assumed level).
  std::optional<PivotChain> forced_chain;
  // Enumerate every successful chain (guarded at n <= 6).
  bool all_chains = false;
  // Accept submatrices of this size as D-stable without checking
  // (2 <= level <= n - 1); 0 means no assumption.
  int assume_level = 0;
};

// Decides/certifies D-stability:
//   1. exact Hurwitz stability (NotStable on failure, with boundary flag),
//   2. necessary condition: -M a P0+ matrix (NecessaryFailed on failure),
//   3. recursive pivot-chain search of the determinantal sufficient test,
//      pivots tried in descending label order at every level, first fully
//      certified chain wins.
// DStable certificates are sound; Inconclusive means this test family
// could not decide.
Certificate certify(const Matrix& m, const CertifyOptions& options = {});

// True when no positive diagonal D puts det(M + iD) (equivalently -iD) at
// zero, decided exactly; defined for n <= 2.  For n = 2 the crossing
// exists iff det > 0 and (m11*m22 < 0 or m11 = m22 = 0).
bool axis_clear_base(const Matrix& m);

// Re-derives every claim of a DStable certificate from the matrix alone:
// stability evidence, necessary condition, chain shape, completeness of
// each level's instance list, every inequality value, and the base block.
// Returns true on success; on failure `why` (if non-null) gets a reason.
bool verify_certificate(const Matrix& m, const Certificate& cert,
                        std::string* why = nullptr);

}  // namespace dstab
