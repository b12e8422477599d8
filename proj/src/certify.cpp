#include "dstab/certify.hpp"

#include <algorithm>

namespace dstab {

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::DStable: return "d_stable";
    case CertificateKind::NotStable: return "not_stable";
    case CertificateKind::NecessaryFailed: return "necessary_failed";
    case CertificateKind::Counterexample: return "counterexample";
    case CertificateKind::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

bool axis_clear_base(const Matrix& m) {
  const int n = m.size();
  if (n == 1) return true;  // det(m11 + i*d) has imaginary part d != 0
  if (n == 2) {
    const int s11 = m.at(0, 0).sign();
    const int s22 = m.at(1, 1).sign();
    const bool det_positive = det(m).sign() > 0;
    const bool crossing =
        det_positive && (s11 * s22 < 0 || (s11 == 0 && s22 == 0));
    return !crossing;
  }
  throw DimensionError("axis-clear base check is only defined for n <= 2");
}

namespace {

// Enumerates the admissible (alpha, beta) pairs for pivot `k` inside the
// surviving label set `support` (k in support) and evaluates them against
// the global minor table.  Minors of a principal submatrix are minors of
// the original matrix, so one table serves every level.
struct LevelOutcome {
  bool applicable = false;
  bool all_satisfied = false;
  std::vector<MinorInequality> instances;
};

LevelOutcome test_level(const Matrix& m, const IndexSet& support, int k,
                        const MinorTable& table) {
  LevelOutcome out;
  if (m.at(k - 1, k - 1).is_zero()) return out;
  out.applicable = true;
  out.all_satisfied = true;
  const int level_size = support.count();
  for (const AlphaBeta& ab : inequality_pairs_over(support.without(k))) {
    MinorInequality inst =
        inequality_value(m, k, ab.alpha, ab.beta, table, level_size);
    if (!inst.satisfied) out.all_satisfied = false;
    out.instances.push_back(std::move(inst));
  }
  return out;
}

struct SearchContext {
  const Matrix& m;
  const MinorTable& table;
  int stop_size = 2;        // recursion floor: 2 or the assumed level
  bool assume_at_stop = false;
  bool exhaustive = false;
  std::vector<PivotChain> found;  // exhaustive mode
};

// Depth-first search over descending pivot labels.  On success fills
// `levels`/`base` with the first fully certified chain.
bool search(SearchContext& ctx, const IndexSet& support,
            std::vector<ChainLevel>& levels, std::optional<BaseRecord>& base,
            PivotChain& chain) {
  const int size = support.count();
  if (size <= ctx.stop_size) {
    BaseRecord record;
    record.indices = support;
    if (ctx.assume_at_stop) {
      record.assumed = true;
    } else {
      record.axis_clear = axis_clear_base(ctx.m.select(support));
      if (!record.axis_clear) return false;
    }
    base = record;
    if (ctx.exhaustive) ctx.found.push_back(chain);
    return true;
  }

  const std::vector<int> labels = support.labels();
  bool any = false;
  for (auto it = labels.rbegin(); it != labels.rend(); ++it) {
    const int k = *it;
    LevelOutcome outcome = test_level(ctx.m, support, k, ctx.table);
    if (!outcome.applicable || !outcome.all_satisfied) continue;

    ChainLevel level;
    level.level_size = size;
    level.pivot = k;
    level.instances = std::move(outcome.instances);
    levels.push_back(std::move(level));
    chain.push_back(k);

    if (search(ctx, support.without(k), levels, base, chain)) {
      if (!ctx.exhaustive) return true;
      any = true;
    }
    chain.pop_back();
    levels.pop_back();
  }
  return any;
}

// Follows one prescribed chain, recording per-level outcomes; fails fast
// with the offending level's attempt data.
bool follow_chain(SearchContext& ctx, const PivotChain& chain,
                  std::vector<ChainLevel>& levels,
                  std::optional<BaseRecord>& base,
                  std::vector<PivotAttempt>& attempts) {
  IndexSet support = IndexSet::full(ctx.m.size());
  for (int k : chain) {
    if (!support.contains(k)) {
      throw DimensionError("pivot chain repeats or exceeds the matrix labels");
    }
    LevelOutcome outcome = test_level(ctx.m, support, k, ctx.table);
    if (!outcome.applicable) {
      attempts.push_back({k, PivotAttempt::Status::ZeroPivot, {}});
      return false;
    }
    if (!outcome.all_satisfied) {
      attempts.push_back(
          {k, PivotAttempt::Status::Violated, std::move(outcome.instances)});
      return false;
    }
    ChainLevel level;
    level.level_size = support.count();
    level.pivot = k;
    level.instances = std::move(outcome.instances);
    levels.push_back(std::move(level));
    support = support.without(k);
  }

  BaseRecord record;
  record.indices = support;
  if (ctx.assume_at_stop && support.count() == ctx.stop_size) {
    record.assumed = true;
  } else {
    record.axis_clear = axis_clear_base(ctx.m.select(support));
    if (!record.axis_clear) {
      attempts.push_back(
          {chain.empty() ? 0 : chain.back(), PivotAttempt::Status::SubmatrixFailed, {}});
      return false;
    }
  }
  base = record;
  return true;
}

}  // namespace

Certificate certify(const Matrix& m, const CertifyOptions& options) {
  const int n = m.size();
  Certificate cert;

  if (options.all_chains && n > 6) {
    throw GuardError("exhaustive chain search is guarded at n <= 6");
  }
  if (options.assume_level != 0 &&
      (options.assume_level < 2 || options.assume_level > n - 1)) {
    throw DimensionError("assumed level must satisfy 2 <= level <= n - 1");
  }
  const int stop_size = options.assume_level == 0 ? 2 : options.assume_level;
  if (options.forced_chain) {
    const int expected = n <= stop_size ? 0 : n - stop_size;
    if (static_cast<int>(options.forced_chain->size()) != expected) {
      throw DimensionError("pivot chain must list exactly " +
                           std::to_string(expected) + " labels");
    }
  }

  cert.stability = hurwitz_stable(m);
  if (!cert.stability.stable) {
    cert.kind = CertificateKind::NotStable;
    return cert;
  }

  cert.necessary = necessary_dstability(m);
  if (!cert.necessary->ok) {
    cert.kind = CertificateKind::NecessaryFailed;
    return cert;
  }

  if (n <= 2) {
    // Stability plus the necessary condition already pin the closed form:
    // sign conditions on the diagonal and determinant hold, so the matrix
    // is D-stable outright.
    cert.kind = CertificateKind::DStable;
    BaseRecord record;
    record.indices = IndexSet::full(n);
    record.axis_clear = axis_clear_base(m);
    cert.base = record;
    return cert;
  }

  const MinorTable table = MinorTable::compute(m);
  SearchContext ctx{m, table, stop_size, options.assume_level != 0,
                    options.all_chains, {}};

  if (options.forced_chain) {
    std::vector<ChainLevel> levels;
    std::optional<BaseRecord> base;
    std::vector<PivotAttempt> attempts;
    if (follow_chain(ctx, *options.forced_chain, levels, base, attempts)) {
      cert.kind = CertificateKind::DStable;
      cert.chain = *options.forced_chain;
      cert.levels = std::move(levels);
      cert.base = base;
    } else {
      cert.kind = CertificateKind::Inconclusive;
      cert.attempts = std::move(attempts);
    }
    return cert;
  }

  std::vector<ChainLevel> levels;
  std::optional<BaseRecord> base;
  PivotChain chain;
  const bool ok = search(ctx, IndexSet::full(n), levels, base, chain);
  if (ok && !ctx.exhaustive) {
    cert.kind = CertificateKind::DStable;
    cert.chain = std::move(chain);
    cert.levels = std::move(levels);
    cert.base = base;
    return cert;
  }
  if (ctx.exhaustive && !ctx.found.empty()) {
    // Re-run the first discovered chain to materialize its levels (the
    // exhaustive walk backtracks through all of them).
    std::vector<PivotAttempt> attempts;
    levels.clear();
    base.reset();
    follow_chain(ctx, ctx.found.front(), levels, base, attempts);
    cert.kind = CertificateKind::DStable;
    cert.chain = ctx.found.front();
    cert.levels = std::move(levels);
    cert.base = base;
    cert.all_chains = std::move(ctx.found);
    return cert;
  }

  // Inconclusive: record one attempt per top-level pivot, descending.
  cert.kind = CertificateKind::Inconclusive;
  const IndexSet full = IndexSet::full(n);
  for (int k = n; k >= 1; --k) {
    LevelOutcome outcome = test_level(m, full, k, table);
    if (!outcome.applicable) {
      cert.attempts.push_back({k, PivotAttempt::Status::ZeroPivot, {}});
    } else if (!outcome.all_satisfied) {
      cert.attempts.push_back(
          {k, PivotAttempt::Status::Violated, std::move(outcome.instances)});
    } else {
      cert.attempts.push_back({k, PivotAttempt::Status::SubmatrixFailed, {}});
    }
  }
  return cert;
}

bool verify_certificate(const Matrix& m, const Certificate& cert,
                        std::string* why) {
  auto fail = [&](const std::string& reason) {
    if (why) *why = reason;
    return false;
  };
  const int n = m.size();

  if (cert.kind != CertificateKind::DStable) {
    return fail("only d_stable certificates are replayable");
  }

  const HurwitzReport stability = hurwitz_stable(m);
  if (!stability.stable) return fail("matrix is not Hurwitz stable");
  if (stability.determinants != cert.stability.determinants) {
    return fail("stability evidence does not match");
  }
  const NecessaryReport necessary = necessary_dstability(m);
  if (!necessary.ok) return fail("necessary condition fails");

  if (n <= 2) {
    if (!cert.chain.empty() || !cert.levels.empty()) {
      return fail("n <= 2 certificates must have an empty chain");
    }
    return base_dstable(m) ? true : fail("closed-form base check fails");
  }

  if (!cert.base) return fail("certificate lacks a base record");
  const MinorTable table = MinorTable::compute(m);

  IndexSet support = IndexSet::full(n);
  if (cert.levels.size() != cert.chain.size()) {
    return fail("levels and chain disagree in length");
  }
  for (std::size_t li = 0; li < cert.chain.size(); ++li) {
    const int k = cert.chain[li];
    const ChainLevel& level = cert.levels[li];
    if (!support.contains(k) || level.pivot != k) {
      return fail("chain pivot " + std::to_string(k) + " is invalid at level " +
                  std::to_string(li));
    }
    if (level.level_size != support.count()) {
      return fail("recorded level size is wrong at level " + std::to_string(li));
    }
    if (m.at(k - 1, k - 1).is_zero()) {
      return fail("pivot entry is zero at level " + std::to_string(li));
    }
    const std::vector<AlphaBeta> pairs = inequality_pairs_over(support.without(k));
    if (pairs.size() != level.instances.size()) {
      return fail("instance list is incomplete at level " + std::to_string(li));
    }
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
      const MinorInequality& stored = level.instances[pi];
      if (stored.alpha != pairs[pi].alpha || stored.beta != pairs[pi].beta) {
        return fail("instance pair mismatch at level " + std::to_string(li));
      }
      const MinorInequality fresh = inequality_value(
          m, k, pairs[pi].alpha, pairs[pi].beta, table, support.count());
      if (fresh.value != stored.value || fresh.chi != stored.chi) {
        return fail("instance value mismatch for alpha=" + stored.alpha.str() +
                    " beta=" + stored.beta.str());
      }
      if (!fresh.satisfied || !stored.satisfied) {
        return fail("violated instance inside a d_stable certificate");
      }
    }
    support = support.without(k);
  }

  if (cert.base->indices != support) {
    return fail("base record does not match the surviving labels");
  }
  if (cert.base->assumed) return true;  // honored as recorded
  if (support.count() > 2) {
    return fail("unassumed base block larger than 2 x 2");
  }
  if (!axis_clear_base(m.select(support))) {
    return fail("base block admits an imaginary-axis crossing");
  }
  return true;
}

}  // namespace dstab
