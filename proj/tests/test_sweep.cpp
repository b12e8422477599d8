#include <doctest.h>

#include <cstdlib>
#include <map>
#include <set>
#include <string>

#include "dstab/sweep.hpp"
#include "support.hpp"

using dstab::MatrixDocument;
using dstab::ParamExpr;
using dstab::Rational;
using dstab::SweepOptions;
using dstab::SweepParam;
using dstab::SweepRow;

namespace {

const char* kCorner3Template = R"({
  "n": 3,
  "entries": [["-1", "0", "q"], ["-1", "-1", "0"], ["-1", "-1", "-1"]],
  "parameters": {"q": null}
})";

const char* kCorner4Template = R"({
  "n": 4,
  "entries": [["-1", "0", "q", "p"], ["-1", "-1", "0", "0"],
              ["-1", "-1", "-1", "0"], ["-1", "-1", "-1", "-1"]],
  "parameters": {"q": null, "p": null}
})";

const char* kGate2Template = R"({
  "n": 2,
  "entries": [["p", "-4"], ["2", "-3"]],
  "parameters": {"p": null}
})";

std::map<std::string, Rational> env_of(
    std::initializer_list<std::pair<const char*, Rational>> kv) {
  std::map<std::string, Rational> env;
  for (const auto& [k, v] : kv) env[k] = v;
  return env;
}

}  // namespace

TEST_CASE("parameter expressions evaluate exactly") {
  CHECK(ParamExpr::parse("1+2*3").eval({}) == Rational(7));
  CHECK(ParamExpr::parse("(1+2)*3").eval({}) == Rational(9));
  CHECK(ParamExpr::parse("-q").eval(env_of({{"q", Rational(5)}})) == Rational(-5));
  CHECK(ParamExpr::parse("2*q - 1/2").eval(env_of({{"q", Rational(1, 4)}})) ==
        Rational(0));
  CHECK(ParamExpr::parse("0.25 + 3/4").eval({}) == Rational(1));
  CHECK(ParamExpr::parse("-(p - q) * 2")
            .eval(env_of({{"p", Rational(3)}, {"q", Rational(1)}})) == Rational(-4));

  std::set<std::string> names;
  ParamExpr::parse("p * (q + r) - q").collect_names(names);
  CHECK(names == std::set<std::string>{"p", "q", "r"});

  CHECK_THROWS_AS(ParamExpr::parse("1 +"), dstab::ParseError);
  CHECK_THROWS_AS(ParamExpr::parse("(1"), dstab::ParseError);
  CHECK_THROWS_AS(ParamExpr::parse("1 2"), dstab::ParseError);
  CHECK_THROWS_AS(ParamExpr::parse("q $"), dstab::ParseError);
  CHECK_THROWS_AS(ParamExpr::parse("q").eval({}), dstab::ParseError);
}

TEST_CASE("sweep parameter specs parse into axes and derived values") {
  const SweepParam axis = dstab::parse_sweep_param("q=-2:4:1/4");
  CHECK(axis.name == "q");
  CHECK_FALSE(axis.derived);
  CHECK(axis.min == Rational(-2));
  CHECK(axis.max == Rational(4));
  CHECK(axis.step == Rational(1, 4));

  const SweepParam derived = dstab::parse_sweep_param("p=2*q");
  CHECK(derived.name == "p");
  CHECK(derived.derived);
  CHECK(derived.expr->eval(env_of({{"q", Rational(3)}})) == Rational(6));

  CHECK_THROWS_AS(dstab::parse_sweep_param("q"), dstab::ParseError);
  CHECK_THROWS_AS(dstab::parse_sweep_param("=1:2:1"), dstab::ParseError);
  CHECK_THROWS_AS(dstab::parse_sweep_param("q="), dstab::ParseError);
  CHECK_THROWS_AS(dstab::parse_sweep_param("q=1:2"), dstab::ParseError);
  CHECK_THROWS_AS(dstab::parse_sweep_param("q=4:-2:1"), dstab::ParseError);
  CHECK_THROWS_AS(dstab::parse_sweep_param("q=0:1:0"), dstab::ParseError);
  CHECK_THROWS_AS(dstab::parse_sweep_param("q=0:1:-1/2"), dstab::ParseError);
}

TEST_CASE("grid sweep over the corner 3x3 family") {
  const MatrixDocument doc = dstab::parse_matrix_document(kCorner3Template);
  SweepOptions options;
  options.params.push_back(dstab::parse_sweep_param("q=-2:4:1/4"));

  const std::vector<SweepRow> rows = dstab::run_sweep(doc, options);
  REQUIRE(rows.size() == 25);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Rational q = Rational(-2) + Rational(static_cast<long>(i), 4);
    REQUIRE(rows[i].values.size() == 1);
    CHECK(rows[i].values[0] == q);
    CHECK(rows[i].hurwitz_stable);             // all points sit above -8/3
    CHECK(rows[i].necessary_ok == (q >= Rational(-1)));
    CHECK(rows[i].certified == (q >= Rational(-1)));
    CHECK_FALSE(rows[i].counterexample.has_value());  // oracle off
  }
}

TEST_CASE("wider grid hits the instability region too") {
  const MatrixDocument doc = dstab::parse_matrix_document(kCorner3Template);
  SweepOptions options;
  options.params.push_back(dstab::parse_sweep_param("q=-3:1:1/2"));
  const std::vector<SweepRow> rows = dstab::run_sweep(doc, options);
  REQUIRE(rows.size() == 9);
  const Rational edge(-8, 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Rational q = Rational(-3) + Rational(static_cast<long>(i), 2);
    CHECK(rows[i].hurwitz_stable == (q > edge));
    CHECK(rows[i].certified == (q >= Rational(-1)));
  }
}

TEST_CASE("derived parameters follow the axes") {
  const MatrixDocument doc = dstab::parse_matrix_document(kCorner4Template);
  SweepOptions options;
  options.params.push_back(dstab::parse_sweep_param("q=-1:1:1"));
  options.params.push_back(dstab::parse_sweep_param("p=2*q"));

  const std::vector<SweepRow> rows = dstab::run_sweep(doc, options);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Rational q = Rational(-1) + Rational(static_cast<long>(i));
    REQUIRE(rows[i].values.size() == 2);
    CHECK(rows[i].values[0] == q);
    CHECK(rows[i].values[1] == Rational(2) * q);
  }
  CHECK(rows[0].hurwitz_stable);        // (p,q) = (-2,-1)
  CHECK_FALSE(rows[0].necessary_ok);
  CHECK_FALSE(rows[0].certified);
  CHECK(rows[1].certified);             // (0,0)
  CHECK(rows[2].certified);             // (2,1): the descending chain applies
}

TEST_CASE("two-axis sweeps run row-major with the first axis slowest") {
  const MatrixDocument doc = dstab::parse_matrix_document(kCorner4Template);
  SweepOptions options;
  options.params.push_back(dstab::parse_sweep_param("q=0:1:1"));
  options.params.push_back(dstab::parse_sweep_param("p=-1:1:1"));
  const std::vector<SweepRow> rows = dstab::run_sweep(doc, options);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].values == std::vector<Rational>{Rational(0), Rational(-1)});
  CHECK(rows[1].values == std::vector<Rational>{Rational(0), Rational(0)});
  CHECK(rows[2].values == std::vector<Rational>{Rational(0), Rational(1)});
  CHECK(rows[3].values == std::vector<Rational>{Rational(1), Rational(-1)});
  CHECK(rows[5].values == std::vector<Rational>{Rational(1), Rational(1)});
}

TEST_CASE("oracle column flags scalable instabilities") {
  const MatrixDocument doc = dstab::parse_matrix_document(kGate2Template);
  SweepOptions options;
  options.params.push_back(dstab::parse_sweep_param("p=0:1:1"));
  options.oracle_trials = 50;
  options.seed = 11u;

  const std::vector<SweepRow> rows = dstab::run_sweep(doc, options);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].hurwitz_stable);
  CHECK(rows[0].certified);
  REQUIRE(rows[0].counterexample.has_value());
  CHECK_FALSE(*rows[0].counterexample);

  CHECK(rows[1].hurwitz_stable);
  CHECK_FALSE(rows[1].certified);  // necessary condition fails at p = 1
  REQUIRE(rows[1].counterexample.has_value());
  CHECK(*rows[1].counterexample);  // diag(1000, 1) destabilizes

  const std::string csv = dstab::sweep_csv(options, rows);
  CHECK(csv ==
        "p,hurwitz_stable,necessary_ok,theorem1_certified,oracle_counterexample\n"
        "0,1,1,1,0\n"
        "1,1,0,0,1\n");
}

TEST_CASE("CSV rendering leaves the oracle column empty when disabled") {
  const MatrixDocument doc = dstab::parse_matrix_document(kCorner3Template);
  SweepOptions options;
  options.params.push_back(dstab::parse_sweep_param("q=-1/2:1/2:1/2"));
  const std::vector<SweepRow> rows = dstab::run_sweep(doc, options);
  const std::string csv = dstab::sweep_csv(options, rows);
  CHECK(csv ==
        "q,hurwitz_stable,necessary_ok,theorem1_certified,oracle_counterexample\n"
        "-1/2,1,1,1,\n"
        "0,1,1,1,\n"
        "1/2,1,1,1,\n");
}

TEST_CASE("sweep validation rejects inconsistent parameter sets") {
  const MatrixDocument doc = dstab::parse_matrix_document(kCorner3Template);

  SweepOptions dup;
  dup.params.push_back(dstab::parse_sweep_param("q=0:1:1"));
  dup.params.push_back(dstab::parse_sweep_param("q=0:2:1"));
  CHECK_THROWS_AS(dstab::run_sweep(doc, dup), dstab::ParseError);

  SweepOptions unbound;  // template needs q
  unbound.params.push_back(dstab::parse_sweep_param("p=0:1:1"));
  CHECK_THROWS_AS(dstab::run_sweep(doc, unbound), dstab::ParseError);

  SweepOptions unused;
  unused.params.push_back(dstab::parse_sweep_param("q=0:1:1"));
  unused.params.push_back(dstab::parse_sweep_param("r=0:1:1"));
  CHECK_THROWS_AS(dstab::run_sweep(doc, unused), dstab::ParseError);

  SweepOptions chained;  // derived may only reference axes
  chained.params.push_back(dstab::parse_sweep_param("q=0:1:1"));
  chained.params.push_back(dstab::parse_sweep_param("p=2*r"));
  CHECK_THROWS_AS(dstab::run_sweep(doc, chained), dstab::ParseError);

  SweepOptions no_axis;
  no_axis.params.push_back(dstab::parse_sweep_param("q=1+1"));
  CHECK_THROWS_AS(dstab::run_sweep(doc, no_axis), dstab::ParseError);
}

TEST_CASE("sweeps are deterministic across runs and worker counts") {
  const MatrixDocument doc = dstab::parse_matrix_document(kCorner3Template);
  SweepOptions options;
  options.params.push_back(dstab::parse_sweep_param("q=-2:1:1/4"));
  options.oracle_trials = 20;
  options.seed = 5u;

  setenv("DSTAB_THREADS", "1", 1);
  const std::string csv_one = dstab::sweep_csv(options, dstab::run_sweep(doc, options));
  setenv("DSTAB_THREADS", "4", 1);
  const std::string csv_four = dstab::sweep_csv(options, dstab::run_sweep(doc, options));
  unsetenv("DSTAB_THREADS");
  CHECK(csv_one == csv_four);

  const std::string csv_again = dstab::sweep_csv(options, dstab::run_sweep(doc, options));
  CHECK(csv_again == csv_four);
}
