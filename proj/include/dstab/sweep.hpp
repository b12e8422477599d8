#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dstab/io.hpp"

namespace dstab {

// Arithmetic over parameter names with +, -, * and exact rational
// constants (parentheses allowed, * binds tighter).
class ParamExpr {
 public:
  static ParamExpr parse(std::string_view text);

  Rational eval(const std::map<std::string, Rational>& env) const;
  void collect_names(std::set<std::string>& out) const;

 private:
  enum class Op { Const, Var, Add, Sub, Mul, Neg };
  Op op_ = Op::Const;
  Rational value_;
  std::string name_;
  std::vector<ParamExpr> kids_;

  friend struct ParamExprParser;
};

// One swept parameter: either a grid axis min:max:step (inclusive of max
// when the step lands on it exactly) or a value derived from the axes.
struct SweepParam {
  std::string name;
  bool derived = false;
  Rational min, max, step;         // axis form
  std::optional<ParamExpr> expr;   // derived form
};

// Parses "NAME=MIN:MAX:STEP" or "NAME=EXPR" (no colon).
SweepParam parse_sweep_param(const std::string& spec);

struct SweepOptions {
  std::vector<SweepParam> params;  // declaration order
  std::int64_t oracle_trials = 0;  // 0 disables the oracle column
  std::uint64_t seed = 0;
};

struct SweepRow {
  std::vector<Rational> values;    // one per parameter, declaration order
  bool hurwitz_stable = false;
  bool necessary_ok = false;
  bool certified = false;
  std::optional<bool> counterexample;  // empty when the oracle is off
};

// Evaluates the template on the full grid (row-major, first-declared axis
// slowest).  Points are independent and may be computed in parallel; rows
// are returned in grid order, so output is deterministic.
std::vector<SweepRow> run_sweep(const MatrixDocument& doc, const SweepOptions& options);

// CSV rendering: header "name,...,hurwitz_stable,necessary_ok,
// theorem1_certified,oracle_counterexample", rationals in canonical form,
// verdicts as 0/1, oracle column empty when disabled.
std::string sweep_csv(const SweepOptions& options, const std::vector<SweepRow>& rows);

}  // namespace dstab
