#include "dstab/inequality.hpp"

#include <algorithm>
#include <string>

#include "dstab/stability.hpp"

namespace dstab {

int sign_exponent(int n, int n_alpha, int n_beta) {
  if (n_beta < 0 || n_beta > n_alpha || n_alpha > n - 1) {
    throw DimensionError("sign exponent requires 0 <= N(beta) <= N(alpha) <= n-1");
  }
  if (((n_alpha - n_beta) % 2) != 0) {
    throw DimensionError("sign exponent requires N(alpha) == N(beta) (mod 2)");
  }
  if (((n - 1 - n_alpha) % 2) == 0) {
    return n - 1 - (n_beta + n_alpha) / 2;
  }
  return (n - 1 - n_beta) / 2 + (n - 1 - n_alpha) / 2;
}

std::vector<AlphaBeta> inequality_pairs_over(const IndexSet& support) {
  const int level = support.count() + 1;

  std::vector<IndexSet> subsets;
  for_each_subset(support, [&](const IndexSet& s) { subsets.push_back(s); });
  std::sort(subsets.begin(), subsets.end());  // cardinality, then label tuple

  std::vector<AlphaBeta> pairs;
  for (const IndexSet& alpha : subsets) {
    const int na = alpha.count();
    if (na < 1 || na > level - 1) continue;
    for (const IndexSet& beta : subsets) {
      if (beta.count() > na) break;  // sorted by cardinality
      if ((beta.count() % 2) != (na % 2)) continue;
      if (!beta.subset_of(alpha)) continue;
      pairs.push_back({alpha, beta});
    }
  }
  // Subsets are already sorted; regroup so all betas of one alpha are
  // consecutive in (N(beta), tuple) order.
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const AlphaBeta& a, const AlphaBeta& b) {
                     if (a.alpha != b.alpha) return a.alpha < b.alpha;
                     return a.beta < b.beta;
                   });
  return pairs;
}

std::vector<AlphaBeta> inequality_pairs(int n, int k) {
  if (k < 1 || k > n) throw DimensionError("pivot label out of range");
  return inequality_pairs_over(IndexSet::full(n).without(k));
}

MinorInequality inequality_value(const Matrix& m, int k, const IndexSet& alpha,
                                 const IndexSet& beta, const MinorTable& table,
                                 int level_size) {
  const int n = m.size();
  if (k < 1 || k > n) throw DimensionError("pivot label out of range");
  if (!beta.subset_of(alpha) || alpha.contains(k)) {
    throw DimensionError("inequality requires beta <= alpha <= [n] \\ {k}");
  }
  const Rational& pivot_entry = m.at(k - 1, k - 1);
  if (pivot_entry.is_zero()) {
    throw SingularError("zero pivot entry m[" + std::to_string(k) + "][" +
                        std::to_string(k) + "]");
  }

  MinorInequality out;
  out.pivot = k;
  out.alpha = alpha;
  out.beta = beta;
  out.chi = sign_exponent(level_size, alpha.count(), beta.count());

  const IndexSet free = alpha - beta;
  const IndexSet with_k = beta.with(k);
  Rational sum(0);
  for_each_subset(free, [&](const IndexSet& gamma) {
    const Rational term =
        table[alpha - gamma] * table[with_k | gamma];
    const bool negative = ((out.chi + gamma.count()) % 2) != 0;
    if (negative) {
      sum -= term;
    } else {
      sum += term;
    }
  });
  out.value = sum / pivot_entry;
  out.satisfied = out.value.sign() >= 0;
  return out;
}

PivotTest pivot_test(const Matrix& m, int k, const MinorTable& table) {
  const int n = m.size();
  if (k < 1 || k > n) throw DimensionError("pivot label out of range");
  PivotTest result;
  if (m.at(k - 1, k - 1).is_zero()) {
    result.applicable = false;
    return result;
  }
  result.applicable = true;
  result.all_satisfied = true;
  for (const AlphaBeta& ab : inequality_pairs(n, k)) {
    MinorInequality inst = inequality_value(m, k, ab.alpha, ab.beta, table, n);
    if (!inst.satisfied) result.all_satisfied = false;
    result.instances.push_back(std::move(inst));
  }
  return result;
}

bool base_dstable(const Matrix& m) {
  const int n = m.size();
  if (n == 1) return m.at(0, 0).sign() < 0;
  if (n == 2) {
    if (!hurwitz_stable(m).stable) return false;
    return m.at(0, 0).sign() <= 0 && m.at(1, 1).sign() <= 0 &&
           det(m).sign() > 0;
  }
  throw DimensionError("closed-form D-stability is only defined for n <= 2");
}

ThreePivotConditions sufficient_3x3(const Matrix& m) {
  if (m.size() != 3) throw DimensionError("sufficient_3x3 requires n = 3");
  const MinorTable table = MinorTable::compute(m);

  ThreePivotConditions out;
  bool diag_nonzero = true;
  for (int i = 0; i < 3; ++i) {
    if (m.at(i, i).is_zero()) diag_nonzero = false;
  }
  out.applicable = diag_nonzero && hurwitz_stable(m).stable &&
                   classify_p(m.negated()).is_P;

  const std::array<int, 3> pivots = {3, 2, 1};
  for (std::size_t idx = 0; idx < pivots.size(); ++idx) {
    const int k = pivots[idx];
    if (m.at(k - 1, k - 1).is_zero()) {
      out.values[idx] = Rational(0);
      continue;
    }
    const IndexSet alpha = IndexSet::full(3).without(k);
    const MinorInequality inst =
        inequality_value(m, k, alpha, IndexSet::empty(3), table, 3);
    out.values[idx] = inst.value;
    if (inst.satisfied) out.any_satisfied = true;
  }
  return out;
}

MinorInequality reduced_pair_inequality(const Matrix& m, int i, int j,
                                        const MinorTable& table) {
  if (m.size() != 4) throw DimensionError("reduced pair form requires n = 4");
  if (i < 1 || j < 1 || i >= j || j > 3) {
    throw DimensionError("reduced pair form requires 1 <= i < j <= 3");
  }
  return inequality_value(m, 4, IndexSet::of(4, {i, j}), IndexSet::empty(4),
                          table, 4);
}

ReducedTriple reduced_triple_inequality(const Matrix& m, int i,
                                        const MinorTable& table) {
  if (m.size() != 4) throw DimensionError("reduced triple form requires n = 4");
  if (i < 1 || i > 3) throw DimensionError("reduced triple index must be 1..3");
  int j = 0, k = 0;
  for (int c = 1; c <= 3; ++c) {
    if (c == i) continue;
    (j == 0 ? j : k) = c;
  }
  ReducedTriple out;
  out.i = i;
  out.value = table[IndexSet::of(4, {i, j})] * table[IndexSet::of(4, {i, k, 4})] +
              table[IndexSet::of(4, {i, k})] * table[IndexSet::of(4, {i, j, 4})] -
              table[IndexSet::of(4, {1, 2, 3})] * table[IndexSet::of(4, {i, 4})] -
              m.at(i - 1, i - 1) * table[IndexSet::full(4)];
  out.satisfied = out.value.sign() <= 0;
  return out;
}

}  // namespace dstab
