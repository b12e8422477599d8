#include "dstab/oracle.hpp"

#include <cmath>

#include "dstab/parallel.hpp"
#include "dstab/stability.hpp"

namespace dstab {

namespace {

enum class Part { Re, Im };

// Shared kernel of the two Lemma-style minor-sum expansions: sum over the
// subsets of `ground` with the requested parity, each weighted by the
// complementary principal minor (shifted into `minor_base`) and the product
// of its scaling variables.
Rational minor_sum(const IndexSet& ground, const IndexSet& minor_base,
                   const std::vector<Rational>& d,
                   const std::vector<int>& labels, const MinorTable& table,
                   Part part) {
  Rational acc(0);
  for_each_subset(ground, [&](const IndexSet& s) {
    const int size = s.count();
    if ((size % 2 == 0) != (part == Part::Re)) return;
    Rational term = table[(ground - s) | minor_base];
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (s.contains(labels[i])) term *= d[i];
    }
    const int exponent = part == Part::Re ? size / 2 : (size - 1) / 2;
    if (exponent % 2 != 0) term = -term;
    acc += term;
  });
  return acc;
}

}  // namespace

Rational re_det_minor_sum(const Matrix& m, const std::vector<Rational>& d,
                          const MinorTable& table) {
  const int n = m.size();
  if (static_cast<int>(d.size()) != n || table.dim() != n) {
    throw DimensionError("expansion arguments must all have dimension n");
  }
  const IndexSet full = IndexSet::full(n);
  return minor_sum(full, IndexSet::empty(n), d, full.labels(), table, Part::Re);
}

Rational im_det_minor_sum(const Matrix& m, const std::vector<Rational>& d,
                          const MinorTable& table) {
  const int n = m.size();
  if (static_cast<int>(d.size()) != n || table.dim() != n) {
    throw DimensionError("expansion arguments must all have dimension n");
  }
  const IndexSet full = IndexSet::full(n);
  return minor_sum(full, IndexSet::empty(n), d, full.labels(), table, Part::Im);
}

ExpansionCheck pivot_expansion_check(const Matrix& m, const std::vector<Rational>& d) {
  const int n = m.size();
  if (static_cast<int>(d.size()) != n) {
    throw DimensionError("diagonal length does not match matrix dimension");
  }
  if (n < 2) throw DimensionError("pivot expansion needs n >= 2");
  const Rational& pivot = m.at(n - 1, n - 1);
  if (pivot.is_zero()) return ExpansionCheck::ZeroPivot;

  const Matrix leading = m.drop(n);
  const std::vector<Rational> d_head(d.begin(), d.end() - 1);
  if (complex_det(leading, d_head, +1).is_zero()) {
    return ExpansionCheck::SingularLeadingBlock;
  }
  const Matrix schur = schur_complement(m, n);

  for (int sign : {+1, -1}) {
    const ComplexRational lhs = complex_det(m, d, sign);
    const ComplexRational head = complex_det(leading, d_head, sign);
    const ComplexRational tail = complex_det(schur, d_head, sign);
    // (+- i) * d_n * head + m_nn * tail
    const Rational dn = d.back();
    ComplexRational rhs{pivot * tail.re - Rational(sign) * dn * head.im,
                        pivot * tail.im + Rational(sign) * dn * head.re};
    if (lhs != rhs) {
      // The identity is exact; reaching this line would mean a defect in
      // the determinant code itself, so surface it loudly.
      throw Error("pivot expansion identity violated for sign " + std::to_string(sign));
    }
  }
  return ExpansionCheck::Holds;
}

Rational ScalingPoly::coefficient(const std::vector<std::uint8_t>& monomial) const {
  const auto it = terms.find(monomial);
  return it == terms.end() ? Rational(0) : it->second;
}

Rational ScalingPoly::eval(const std::vector<Rational>& d) const {
  if (static_cast<int>(d.size()) != vars) {
    throw DimensionError("evaluation point has wrong arity");
  }
  Rational acc(0);
  for (const auto& [mono, coeff] : terms) {
    Rational term = coeff;
    for (int v = 0; v < vars; ++v) {
      for (int e = 0; e < mono[static_cast<std::size_t>(v)]; ++e) {
        term *= d[static_cast<std::size_t>(v)];
      }
    }
    acc += term;
  }
  return acc;
}

namespace {

struct FactorPair {
  // Head factor: det expansion of the pivot-deleted block.  Tail factor:
  // the same expansion with every minor shifted by the pivot label and
  // divided by the pivot entry.
  Rational re_head, im_head, re_tail, im_tail;
};

FactorPair crossing_factors(const Matrix& m, int k, const std::vector<Rational>& d,
                            const MinorTable& table) {
  const int n = m.size();
  if (k < 1 || k > n) throw DimensionError("pivot label out of range");
  const Rational& pivot = m.at(k - 1, k - 1);
  if (pivot.is_zero()) {
    throw SingularError("crossing form requires a nonzero pivot entry");
  }
  if (static_cast<int>(d.size()) != n - 1) {
    throw DimensionError("crossing form takes n - 1 scaling variables");
  }
  const IndexSet support = IndexSet::full(n).without(k);
  const std::vector<int> labels = support.labels();
  const IndexSet pivot_set = IndexSet::empty(n).with(k);

  FactorPair f;
  f.re_head = minor_sum(support, IndexSet::empty(n), d, labels, table, Part::Re);
  f.im_head = minor_sum(support, IndexSet::empty(n), d, labels, table, Part::Im);
  f.re_tail = minor_sum(support, pivot_set, d, labels, table, Part::Re) / pivot;
  f.im_tail = minor_sum(support, pivot_set, d, labels, table, Part::Im) / pivot;
  return f;
}

}  // namespace

Rational crossing_form_value(const Matrix& m, int k,
                             const std::vector<Rational>& d,
                             const MinorTable& table) {
  const FactorPair f = crossing_factors(m, k, d, table);
  return f.re_head * f.re_tail + f.im_head * f.im_tail;
}

ScalingPoly crossing_form_expand(const Matrix& m, int k, const MinorTable& table) {
  const int n = m.size();
  if (n > 7) {
    throw GuardError("symbolic crossing-form expansion is guarded at n <= 7");
  }
  if (k < 1 || k > n) throw DimensionError("pivot label out of range");
  const Rational& pivot = m.at(k - 1, k - 1);
  if (pivot.is_zero()) {
    throw SingularError("crossing form requires a nonzero pivot entry");
  }

  const IndexSet support = IndexSet::full(n).without(k);
  const std::vector<int> labels = support.labels();
  const int vars = n - 1;

  // Builds one factor as a multilinear polynomial: subsets of the support
  // with the requested parity, coefficient = signed complementary minor.
  const auto factor = [&](const IndexSet& minor_base, Part part) {
    ScalingPoly p;
    p.vars = vars;
    for_each_subset(support, [&](const IndexSet& s) {
      const int size = s.count();
      if ((size % 2 == 0) != (part == Part::Re)) return;
      Rational coeff = table[(support - s) | minor_base];
      if (!minor_base.is_empty()) coeff /= pivot;
      const int exponent = part == Part::Re ? size / 2 : (size - 1) / 2;
      if (exponent % 2 != 0) coeff = -coeff;
      if (coeff.is_zero()) return;
      std::vector<std::uint8_t> mono(static_cast<std::size_t>(vars), 0);
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (s.contains(labels[i])) mono[i] = 1;
      }
      p.terms.emplace(std::move(mono), std::move(coeff));
    });
    return p;
  };

  const auto multiply_add = [&](ScalingPoly& acc, const ScalingPoly& a,
                                const ScalingPoly& b) {
    for (const auto& [ma, ca] : a.terms) {
      for (const auto& [mb, cb] : b.terms) {
        std::vector<std::uint8_t> mono(static_cast<std::size_t>(vars));
        for (int v = 0; v < vars; ++v) {
          mono[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(
              ma[static_cast<std::size_t>(v)] + mb[static_cast<std::size_t>(v)]);
        }
        acc.terms[mono] += ca * cb;
      }
    }
  };

  const IndexSet pivot_set = IndexSet::empty(n).with(k);
  ScalingPoly result;
  result.vars = vars;
  multiply_add(result, factor(IndexSet::empty(n), Part::Re),
               factor(pivot_set, Part::Re));
  multiply_add(result, factor(IndexSet::empty(n), Part::Im),
               factor(pivot_set, Part::Im));
  for (auto it = result.terms.begin(); it != result.terms.end();) {
    it = it->second.is_zero() ? result.terms.erase(it) : std::next(it);
  }
  return result;
}

namespace {

constexpr double kDecisionMargin = 1e-6;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Per-trial generator state; successive draws re-mix the state.
struct TrialRng {
  std::uint64_t state;
  TrialRng(std::uint64_t seed, std::uint64_t trial)
      : state(splitmix64(seed ^ splitmix64(trial + 1))) {}
  double uniform01() {
    state = splitmix64(state);
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  }
};

std::vector<double> sample_diagonal(int n, std::uint64_t seed, std::uint64_t trial) {
  TrialRng rng(seed, trial);
  std::vector<double> d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    d[static_cast<std::size_t>(i)] = std::pow(10.0, -3.0 + 6.0 * rng.uniform01());
  }
  return d;
}

std::vector<std::vector<double>> fixed_probes(int n) {
  std::vector<std::vector<double>> probes;
  probes.emplace_back(static_cast<std::size_t>(n), 1.0);
  for (int i = 0; i < n; ++i) {
    std::vector<double> big(static_cast<std::size_t>(n), 1.0);
    big[static_cast<std::size_t>(i)] = 1e3;
    probes.push_back(std::move(big));
    std::vector<double> small(static_cast<std::size_t>(n), 1.0);
    small[static_cast<std::size_t>(i)] = 1e-3;
    probes.push_back(std::move(small));
  }
  return probes;
}

struct TrialOutcome {
  bool hit = false;
  bool failed = false;  // eigenvalue iteration did not converge
  double abscissa = 0.0;
};

TrialOutcome evaluate(const Matrix& m, const std::vector<double>& d) {
  TrialOutcome out;
  double a;
  try {
    a = spectral_abscissa_scaled(m, d);
  } catch (const EigenvalueError&) {
    out.failed = true;
    return out;
  }
  if (a >= kDecisionMargin) {
    out.hit = true;
    out.abscissa = a;
    return out;
  }
  if (a > 0.0) {
    // Near-threshold: adjudicate at quadruple precision before accepting.
    try {
      const double refined = spectral_abscissa_scaled_quad(m, d);
      if (refined >= kDecisionMargin) {
        out.hit = true;
        out.abscissa = refined;
      }
    } catch (const EigenvalueError&) {
      out.failed = true;
    }
  }
  return out;
}

}  // namespace

CounterexampleReport search_counterexample(const Matrix& m, std::int64_t trials,
                                           std::uint64_t seed) {
  if (trials < 0) throw DimensionError("trial count must be nonnegative");
  const int n = m.size();
  CounterexampleReport report;

  // Deterministic probes come first; indices below zero keep them distinct
  // from the random trials in reports.
  const auto probes = fixed_probes(n);
  std::int64_t probe_index = -static_cast<std::int64_t>(probes.size());
  for (const auto& d : probes) {
    const TrialOutcome out = evaluate(m, d);
    if (out.failed) ++report.eigen_failures;
    if (out.hit) {
      report.found = DiagonalSample{d, seed, probe_index};
      report.abscissa = out.abscissa;
      report.margin = out.abscissa - kDecisionMargin;
      return report;
    }
    ++probe_index;
  }

  constexpr std::int64_t kBlock = 1024;
  const unsigned workers = worker_count();
  for (std::int64_t begin = 0; begin < trials; begin += kBlock) {
    const std::int64_t end = std::min(trials, begin + kBlock);
    const std::size_t count = static_cast<std::size_t>(end - begin);

    struct Hit {
      std::int64_t index;
      std::vector<double> d;
      double abscissa;
    };
    std::vector<std::optional<Hit>> hits(count);
    std::vector<std::int64_t> failures(count, 0);
    parallel_chunks(count, workers, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        const std::int64_t trial = begin + static_cast<std::int64_t>(i);
        const std::vector<double> d =
            sample_diagonal(n, seed, static_cast<std::uint64_t>(trial));
        const TrialOutcome out = evaluate(m, d);
        if (out.failed) failures[i] = 1;
        if (out.hit) hits[i] = Hit{trial, d, out.abscissa};
      }
    });

    report.trials_run = end;
    for (std::size_t i = 0; i < count; ++i) {
      report.eigen_failures += failures[i];
      if (hits[i] && !report.found) {
        report.found = DiagonalSample{hits[i]->d, seed, hits[i]->index};
        report.abscissa = hits[i]->abscissa;
        report.margin = hits[i]->abscissa - kDecisionMargin;
      }
    }
    if (report.found) return report;
  }

  const std::int64_t evaluated =
      report.trials_run + static_cast<std::int64_t>(probes.size());
  if (evaluated > 0 && report.eigen_failures >= evaluated) {
    throw EigenvalueError("every scaling trial failed to converge");
  }
  return report;
}

}  // namespace dstab
