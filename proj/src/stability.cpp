#include "dstab/stability.hpp"

#include <algorithm>
#include <string>

namespace dstab {

Rational CharPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (std::size_t j = coeff.size(); j-- > 0;) {
    acc = acc * x + coeff[j];
  }
  return acc;
}

namespace {

Matrix multiply(const Matrix& a, const Matrix& b) {
  const int n = a.size();
  Matrix c(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const Rational& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        c.at(i, j) += aik * b.at(k, j);
      }
    }
  }
  return c;
}

Rational trace(const Matrix& m) {
  Rational t(0);
  for (int i = 0; i < m.size(); ++i) t += m.at(i, i);
  return t;
}

}  // namespace

CharPoly char_poly(const Matrix& m) {
  const int n = m.size();
  // Faddeev-LeVerrier: det(lambda*I - M) = lambda^n + a1*lambda^(n-1) + ...
  // with a_k = -tr(M * B_{k-1}) / k and B_k = M * B_{k-1} + a_k * I.
  std::vector<Rational> a(static_cast<std::size_t>(n) + 1);
  a[0] = Rational(1);
  Matrix b = Matrix::identity(n);
  for (int k = 1; k <= n; ++k) {
    Matrix mb = multiply(m, b);
    a[static_cast<std::size_t>(k)] = -trace(mb) / Rational(k);
    b = mb;
    for (int i = 0; i < n; ++i) b.at(i, i) += a[static_cast<std::size_t>(k)];
  }
  // Convert to det(M - lambda*I) = (-1)^n * det(lambda*I - M): coefficient
  // of lambda^j is (-1)^n * a_{n-j}.
  CharPoly p;
  p.coeff.resize(static_cast<std::size_t>(n) + 1);
  const bool flip = (n % 2) != 0;
  for (int j = 0; j <= n; ++j) {
    const Rational& c = a[static_cast<std::size_t>(n - j)];
    p.coeff[static_cast<std::size_t>(j)] = flip ? -c : c;
  }
  return p;
}

HurwitzReport hurwitz_stable(const Matrix& m) {
  const int n = m.size();
  CharPoly p = char_poly(m);

  // Normalize to b_0*lambda^n + ... + b_n with b_0 = 1 > 0 (the leading
  // coefficient of det(M - lambda*I) is (-1)^n).
  std::vector<Rational> b(static_cast<std::size_t>(n) + 1);
  const bool flip = (n % 2) != 0;
  for (int k = 0; k <= n; ++k) {
    const Rational& c = p.coeff[static_cast<std::size_t>(n - k)];
    b[static_cast<std::size_t>(k)] = flip ? -c : c;
  }

  // Hurwitz matrix H[i][j] = b_{2j - i} (1-based), zero outside 0..n.
  Matrix h(n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const int idx = 2 * j - i;
      h.at(i - 1, j - 1) = (idx >= 0 && idx <= n) ? b[static_cast<std::size_t>(idx)] : Rational(0);
    }
  }

  HurwitzReport report;
  report.determinants.reserve(static_cast<std::size_t>(n));
  bool all_positive = true;
  bool any_zero = false;
  for (int k = 1; k <= n; ++k) {
    IndexSet leading = IndexSet::empty(n);
    for (int i = 1; i <= k; ++i) leading = leading.with(i);
    Rational delta = principal_minor(h, leading);
    if (delta.sign() <= 0) all_positive = false;
    if (delta.sign() == 0) any_zero = true;
    report.determinants.push_back(std::move(delta));
  }
  report.stable = all_positive;
  report.boundary = !all_positive && any_zero;
  return report;
}

PClassReport classify_p(const Matrix& m) {
  const int n = m.size();
  const MinorTable table = MinorTable::compute(m);

  PClassReport report;
  report.order_sums.assign(static_cast<std::size_t>(n), Rational(0));
  report.is_P = true;
  report.is_P0 = true;

  // Scan subsets by cardinality, then ascending label tuple, so the witness
  // is the first violation in that deterministic order.
  std::vector<IndexSet> subsets;
  subsets.reserve((std::size_t{1} << n) - 1);
  for_each_subset(IndexSet::full(n), [&](const IndexSet& s) {
    if (!s.is_empty()) subsets.push_back(s);
  });
  std::sort(subsets.begin(), subsets.end());

  std::optional<IndexSet> first_nonpositive;
  std::optional<IndexSet> first_negative;
  for (const IndexSet& s : subsets) {
    const Rational& minor = table[s];
    report.order_sums[static_cast<std::size_t>(s.count() - 1)] += minor;
    if (minor.sign() <= 0 && !first_nonpositive) first_nonpositive = s;
    if (minor.sign() < 0 && !first_negative) first_negative = s;
  }
  report.is_P = !first_nonpositive.has_value();
  report.is_P0 = !first_negative.has_value();

  bool sums_positive = true;
  for (int k = 1; k <= n; ++k) {
    if (report.order_sums[static_cast<std::size_t>(k - 1)].sign() <= 0) {
      sums_positive = false;
      if (report.is_P0 && !report.failing_order) report.failing_order = k;
    }
  }
  report.is_P0_plus = report.is_P0 && sums_positive;

  if (!report.is_P0) {
    report.witness = first_negative;
  } else if (!report.is_P) {
    report.witness = first_nonpositive;
  }
  return report;
}

NecessaryReport necessary_dstability(const Matrix& m) {
  NecessaryReport report;
  report.neg_class = classify_p(m.negated());
  report.ok = report.neg_class.is_P0_plus;
  return report;
}

}  // namespace dstab
