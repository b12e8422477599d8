#include "dstab/sweep.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "dstab/certify.hpp"
#include "dstab/oracle.hpp"
#include "dstab/parallel.hpp"

namespace dstab {

// --- expression parsing ---------------------------------------------------

struct ParamExprParser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_space();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_space();
    return pos < text.size() ? text[pos] : '\0';
  }

  ParamExpr parse_expr() {
    ParamExpr left = parse_term();
    while (true) {
      if (eat('+')) {
        left = make(ParamExpr::Op::Add, std::move(left), parse_term());
      } else if (eat('-')) {
        left = make(ParamExpr::Op::Sub, std::move(left), parse_term());
      } else {
        return left;
      }
    }
  }

  ParamExpr parse_term() {
    ParamExpr left = parse_factor();
    while (eat('*')) {
      left = make(ParamExpr::Op::Mul, std::move(left), parse_factor());
    }
    return left;
  }

  ParamExpr parse_factor() {
    if (eat('-')) {
      ParamExpr e;
      e.op_ = ParamExpr::Op::Neg;
      e.kids_.push_back(parse_factor());
      return e;
    }
    if (eat('(')) {
      ParamExpr inner = parse_expr();
      if (!eat(')')) throw ParseError("missing ')' in parameter expression");
      return inner;
    }
    skip_space();
    const std::size_t start = pos;
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (pos < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[pos])) ||
              text[pos] == '.' || text[pos] == '/')) {
        ++pos;
      }
      ParamExpr e;
      e.op_ = ParamExpr::Op::Const;
      e.value_ = Rational::parse(text.substr(start, pos - start));
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
        ++pos;
      }
      ParamExpr e;
      e.op_ = ParamExpr::Op::Var;
      e.name_ = std::string(text.substr(start, pos - start));
      return e;
    }
    throw ParseError("unexpected character in parameter expression: '" +
                     std::string(1, c) + "'");
  }

  static ParamExpr make(ParamExpr::Op op, ParamExpr a, ParamExpr b) {
    ParamExpr e;
    e.op_ = op;
    e.kids_.push_back(std::move(a));
    e.kids_.push_back(std::move(b));
    return e;
  }
};

ParamExpr ParamExpr::parse(std::string_view text) {
  ParamExprParser parser{text};
  ParamExpr e = parser.parse_expr();
  parser.skip_space();
  if (parser.pos != text.size()) {
    throw ParseError("trailing input in parameter expression: '" +
                     std::string(text.substr(parser.pos)) + "'");
  }
  return e;
}

Rational ParamExpr::eval(const std::map<std::string, Rational>& env) const {
  switch (op_) {
    case Op::Const: return value_;
    case Op::Var: {
      const auto it = env.find(name_);
      if (it == env.end()) {
        throw ParseError("expression references unknown parameter '" + name_ + "'");
      }
      return it->second;
    }
    case Op::Add: return kids_[0].eval(env) + kids_[1].eval(env);
    case Op::Sub: return kids_[0].eval(env) - kids_[1].eval(env);
    case Op::Mul: return kids_[0].eval(env) * kids_[1].eval(env);
    case Op::Neg: return -kids_[0].eval(env);
  }
  throw Error("unreachable expression op");
}

void ParamExpr::collect_names(std::set<std::string>& out) const {
  if (op_ == Op::Var) out.insert(name_);
  for (const ParamExpr& k : kids_) k.collect_names(out);
}

// --- parameter specs ------------------------------------------------------

SweepParam parse_sweep_param(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ParseError("parameter spec must look like NAME=MIN:MAX:STEP or NAME=EXPR");
  }
  SweepParam param;
  param.name = spec.substr(0, eq);
  const std::string rhs = spec.substr(eq + 1);
  if (rhs.empty()) throw ParseError("empty right-hand side in '" + spec + "'");

  if (rhs.find(':') == std::string::npos) {
    param.derived = true;
    param.expr = ParamExpr::parse(rhs);
    return param;
  }
  std::vector<std::string> parts;
  std::istringstream in(rhs);
  std::string tok;
  while (std::getline(in, tok, ':')) parts.push_back(tok);
  if (parts.size() != 3) {
    throw ParseError("grid axis must have exactly MIN:MAX:STEP in '" + spec + "'");
  }
  param.min = Rational::parse(parts[0]);
  param.max = Rational::parse(parts[1]);
  param.step = Rational::parse(parts[2]);
  if (param.step.sign() <= 0) {
    throw ParseError("grid step must be positive in '" + spec + "'");
  }
  if (param.max < param.min) {
    throw ParseError("empty grid: max < min in '" + spec + "'");
  }
  return param;
}

// --- grid evaluation ------------------------------------------------------

namespace {

std::vector<Rational> axis_points(const SweepParam& axis) {
  std::vector<Rational> points;
  for (Rational v = axis.min; v <= axis.max; v += axis.step) {
    points.push_back(v);
  }
  return points;
}

}  // namespace

std::vector<SweepRow> run_sweep(const MatrixDocument& doc, const SweepOptions& options) {
  std::vector<const SweepParam*> axes;
  std::vector<const SweepParam*> derived;
  std::set<std::string> names;
  for (const SweepParam& p : options.params) {
    if (!names.insert(p.name).second) {
      throw ParseError("parameter '" + p.name + "' declared twice");
    }
    (p.derived ? derived : axes).push_back(&p);
  }

  // Every template placeholder must be bound...
  for (const std::string& placeholder : doc.parameters) {
    if (!names.count(placeholder)) {
      throw ParseError("unbound parameter '" + placeholder + "'");
    }
  }
  // ... every declared name must do something ...
  std::set<std::string> used(doc.parameters.begin(), doc.parameters.end());
  for (const SweepParam* p : derived) p->expr->collect_names(used);
  for (const SweepParam& p : options.params) {
    if (!used.count(p.name)) {
      throw ParseError("parameter '" + p.name +
                       "' is neither in the template nor referenced by an expression");
    }
  }
  // ... and derived expressions may only reference grid axes.
  for (const SweepParam* p : derived) {
    std::set<std::string> refs;
    p->expr->collect_names(refs);
    for (const std::string& r : refs) {
      const auto it = std::find_if(axes.begin(), axes.end(),
                                   [&](const SweepParam* a) { return a->name == r; });
      if (it == axes.end()) {
        throw ParseError("derived parameter '" + p->name +
                         "' references '" + r + "', which is not a grid axis");
      }
    }
  }
  if (axes.empty()) throw ParseError("sweep needs at least one grid axis");

  std::vector<std::vector<Rational>> points;
  std::size_t total = 1;
  for (const SweepParam* a : axes) {
    points.push_back(axis_points(*a));
    total *= points.back().size();
  }

  std::vector<SweepRow> rows(total);
  parallel_chunks(total, worker_count(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t idx = lo; idx < hi; ++idx) {
      // Row-major decode: first-declared axis varies slowest.
      std::map<std::string, Rational> env;
      std::size_t rest = idx;
      for (std::size_t a = axes.size(); a-- > 0;) {
        const auto& axis_values = points[a];
        env[axes[a]->name] = axis_values[rest % axis_values.size()];
        rest /= axis_values.size();
      }
      for (const SweepParam* p : derived) {
        env[p->name] = p->expr->eval(env);
      }

      SweepRow& row = rows[idx];
      for (const SweepParam& p : options.params) {
        row.values.push_back(env.at(p.name));
      }

      const Matrix m = doc.bind(env);
      row.hurwitz_stable = hurwitz_stable(m).stable;
      row.necessary_ok = necessary_dstability(m).ok;
      row.certified = certify(m).kind == CertificateKind::DStable;
      if (options.oracle_trials > 0) {
        row.counterexample =
            search_counterexample(m, options.oracle_trials, options.seed)
                .found.has_value();
      }
    }
  });
  return rows;
}

std::string sweep_csv(const SweepOptions& options, const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  for (const SweepParam& p : options.params) out << p.name << ",";
  out << "hurwitz_stable,necessary_ok,theorem1_certified,oracle_counterexample\n";
  for (const SweepRow& row : rows) {
    for (const Rational& v : row.values) out << v.str() << ",";
    out << (row.hurwitz_stable ? 1 : 0) << "," << (row.necessary_ok ? 1 : 0) << ","
        << (row.certified ? 1 : 0) << ",";
    if (row.counterexample) out << (*row.counterexample ? 1 : 0);
    out << "\n";
  }
  return out.str();
}

}  // namespace dstab
