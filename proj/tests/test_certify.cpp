#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "dstab/certify.hpp"
#include "support.hpp"

using dstab::Certificate;
using dstab::CertificateKind;
using dstab::CertifyOptions;
using dstab::IndexSet;
using dstab::Matrix;
using dstab::PivotChain;
using dstab::Rational;

namespace {

Certificate certify_corner3(const Rational& q, CertifyOptions opts = {}) {
  return dstab::certify(testsupport::corner_param_3x3(q), opts);
}

}  // namespace

TEST_CASE("certificate kind names") {
  CHECK(dstab::to_string(CertificateKind::DStable) == "d_stable");
  CHECK(dstab::to_string(CertificateKind::NotStable) == "not_stable");
  CHECK(dstab::to_string(CertificateKind::NecessaryFailed) == "necessary_failed");
  CHECK(dstab::to_string(CertificateKind::Counterexample) == "counterexample");
  CHECK(dstab::to_string(CertificateKind::Inconclusive) == "inconclusive");
}

TEST_CASE("axis-clear base block closed form") {
  CHECK(dstab::axis_clear_base(Matrix::from_rows({{Rational(5)}})));
  // Positive determinant with opposite diagonal signs: a crossing exists.
  CHECK_FALSE(dstab::axis_clear_base(Matrix::from_rows({
      {Rational(1), Rational(-4)},
      {Rational(2), Rational(-3)},
  })));
  // Rotation block: zero diagonal and det > 0, crossing at d = (1,1).
  CHECK_FALSE(dstab::axis_clear_base(Matrix::from_rows({
      {Rational(0), Rational(1)},
      {Rational(-1), Rational(0)},
  })));
  // Same-sign diagonal keeps the axis clear regardless of the determinant.
  CHECK(dstab::axis_clear_base(Matrix::from_rows({
      {Rational(-1), Rational(1)},
      {Rational(-1), Rational(-1)},
  })));
  // Negative determinant never crosses.
  CHECK(dstab::axis_clear_base(Matrix::from_rows({
      {Rational(1), Rational(2)},
      {Rational(3), Rational(1)},
  })));
  // Singular block: no strictly-imaginary root for positive scalings.
  CHECK(dstab::axis_clear_base(Matrix::from_rows({
      {Rational(-1), Rational(-1)},
      {Rational(-1), Rational(-1)},
  })));
  CHECK_THROWS_AS(dstab::axis_clear_base(Matrix::identity(3)),
                  dstab::DimensionError);
}

TEST_CASE("corner-parameter 3x3: verdict regions across q") {
  const Certificate far_unstable = certify_corner3(Rational(-3));
  CHECK(far_unstable.kind == CertificateKind::NotStable);
  CHECK_FALSE(far_unstable.stability.boundary);
  CHECK_FALSE(far_unstable.necessary.has_value());

  const Certificate edge = certify_corner3(Rational(-8, 3));
  CHECK(edge.kind == CertificateKind::NotStable);
  CHECK(edge.stability.boundary);

  const Certificate necessary_gap = certify_corner3(Rational(-2));
  CHECK(necessary_gap.kind == CertificateKind::NecessaryFailed);
  REQUIRE(necessary_gap.necessary.has_value());
  CHECK_FALSE(necessary_gap.necessary->ok);
  REQUIRE(necessary_gap.necessary->neg_class.witness.has_value());
  CHECK(*necessary_gap.necessary->neg_class.witness == IndexSet::of(3, {1, 3}));

  const Certificate touch = certify_corner3(Rational(-1));
  CHECK(touch.kind == CertificateKind::DStable);
  CHECK(touch.chain == PivotChain{2});
  REQUIRE(touch.base.has_value());
  CHECK(touch.base->indices == IndexSet::of(3, {1, 3}));
  CHECK(touch.base->axis_clear);
  CHECK_FALSE(touch.base->assumed);

  const Certificate inner = certify_corner3(Rational(-1, 2));
  CHECK(inner.kind == CertificateKind::DStable);
  CHECK(inner.chain == PivotChain{2});

  const Certificate zero = certify_corner3(Rational(0));
  CHECK(zero.kind == CertificateKind::DStable);
  CHECK(zero.chain == PivotChain{3});

  const Certificate positive = certify_corner3(Rational(1));
  CHECK(positive.kind == CertificateKind::DStable);
  CHECK(positive.chain == PivotChain{3});
  REQUIRE(positive.levels.size() == 1);
  CHECK(positive.levels[0].level_size == 3);
  CHECK(positive.levels[0].pivot == 3);
  CHECK(positive.levels[0].instances.size() == 4);
}

TEST_CASE("blind-spot 3x3 stays inconclusive with full attempt data") {
  const Certificate cert = dstab::certify(testsupport::missed_3x3());
  CHECK(cert.kind == CertificateKind::Inconclusive);
  REQUIRE(cert.attempts.size() == 3);
  CHECK(cert.attempts[0].pivot == 3);
  CHECK(cert.attempts[1].pivot == 2);
  CHECK(cert.attempts[2].pivot == 1);
  for (const dstab::PivotAttempt& attempt : cert.attempts) {
    CHECK(attempt.status == dstab::PivotAttempt::Status::Violated);
    CHECK(attempt.instances.size() == 4);
  }
  CHECK(cert.attempts[0].instances[2].alpha == IndexSet::of(3, {1, 2}));
  CHECK(cert.attempts[0].instances[2].value == Rational(-118));
  CHECK_FALSE(cert.attempts[0].instances[2].satisfied);
}

TEST_CASE("necessary condition failure is reported before any search") {
  const Certificate cert = dstab::certify(testsupport::not_dstable_2x2());
  CHECK(cert.kind == CertificateKind::NecessaryFailed);
  REQUIRE(cert.necessary.has_value());
  CHECK_FALSE(cert.necessary->ok);
}

TEST_CASE("small matrices certify directly") {
  const Certificate one = dstab::certify(Matrix::from_rows({{Rational(-1)}}));
  CHECK(one.kind == CertificateKind::DStable);
  CHECK(one.chain.empty());
  REQUIRE(one.base.has_value());
  CHECK(one.base->indices == IndexSet::full(1));
  CHECK(dstab::verify_certificate(Matrix::from_rows({{Rational(-1)}}), one));

  const Matrix two = Matrix::from_rows({
      {Rational(0), Rational(1)},
      {Rational(-1), Rational(-1)},
  });
  const Certificate cert2 = dstab::certify(two);
  CHECK(cert2.kind == CertificateKind::DStable);
  CHECK(cert2.chain.empty());
  CHECK(dstab::verify_certificate(two, cert2));
}

TEST_CASE("4x4 corner family certifies along the descending chain") {
  const Matrix m = testsupport::corner_param_4x4(Rational(2), Rational(1));
  const Certificate cert = dstab::certify(m);
  CHECK(cert.kind == CertificateKind::DStable);
  CHECK(cert.chain == PivotChain{4, 3});
  REQUIRE(cert.levels.size() == 2);
  CHECK(cert.levels[0].level_size == 4);
  CHECK(cert.levels[0].instances.size() == 13);
  CHECK(cert.levels[1].level_size == 3);
  CHECK(cert.levels[1].instances.size() == 4);
  REQUIRE(cert.base.has_value());
  CHECK(cert.base->indices == IndexSet::of(4, {1, 2}));
  CHECK(cert.base->axis_clear);
  CHECK(dstab::verify_certificate(m, cert));
}

TEST_CASE("forced chains replay alternative certificates") {
  const Matrix m = testsupport::corner_param_4x4(Rational(2), Rational(1));

  CertifyOptions alt;
  alt.forced_chain = PivotChain{4, 1};
  const Certificate cert = dstab::certify(m, alt);
  CHECK(cert.kind == CertificateKind::DStable);
  CHECK(cert.chain == PivotChain{4, 1});
  REQUIRE(cert.base.has_value());
  CHECK(cert.base->indices == IndexSet::of(4, {2, 3}));
  CHECK(dstab::verify_certificate(m, cert));

  // A chain whose first level is violated comes back inconclusive with the
  // offending pivot recorded.
  CertifyOptions bad;
  bad.forced_chain = PivotChain{2};
  const Certificate fail = certify_corner3(Rational(1), bad);
  CHECK(fail.kind == CertificateKind::Inconclusive);
  REQUIRE(fail.attempts.size() == 1);
  CHECK(fail.attempts[0].pivot == 2);
  CHECK(fail.attempts[0].status == dstab::PivotAttempt::Status::Violated);

  CertifyOptions wrong_len;
  wrong_len.forced_chain = PivotChain{3, 2};
  CHECK_THROWS_AS(certify_corner3(Rational(1), wrong_len), dstab::DimensionError);

  CertifyOptions repeated;
  repeated.forced_chain = PivotChain{4, 4};
  CHECK_THROWS_AS(dstab::certify(m, repeated), dstab::DimensionError);
}

TEST_CASE("assumed levels stop the recursion early") {
  const Matrix m = testsupport::corner_param_4x4(Rational(2), Rational(1));

  CertifyOptions assume3;
  assume3.assume_level = 3;
  const Certificate cert = dstab::certify(m, assume3);
  CHECK(cert.kind == CertificateKind::DStable);
  CHECK(cert.chain == PivotChain{4});
  REQUIRE(cert.base.has_value());
  CHECK(cert.base->indices == IndexSet::of(4, {1, 2, 3}));
  CHECK(cert.base->assumed);
  CHECK_FALSE(cert.base->axis_clear);
  CHECK(dstab::verify_certificate(m, cert));  // assumption honored as recorded

  CertifyOptions assume2;
  assume2.assume_level = 2;
  const Certificate same = dstab::certify(m, assume2);
  CHECK(same.chain == PivotChain{4, 3});
  REQUIRE(same.base.has_value());
  CHECK(same.base->assumed);

  CertifyOptions bad_low;
  bad_low.assume_level = 1;
  CHECK_THROWS_AS(dstab::certify(m, bad_low), dstab::DimensionError);
  CertifyOptions bad_high;
  bad_high.assume_level = 4;
  CHECK_THROWS_AS(dstab::certify(m, bad_high), dstab::DimensionError);

  CertifyOptions forced_assumed;
  forced_assumed.assume_level = 3;
  forced_assumed.forced_chain = PivotChain{4};
  const Certificate forced = dstab::certify(m, forced_assumed);
  CHECK(forced.kind == CertificateKind::DStable);
  CHECK(forced.chain == PivotChain{4});
}

TEST_CASE("exhaustive chain enumeration") {
  CertifyOptions all;
  all.all_chains = true;

  const Certificate three = certify_corner3(Rational(0), all);
  CHECK(three.kind == CertificateKind::DStable);
  CHECK(three.chain == PivotChain{3});  // first in descending order
  CHECK(three.all_chains ==
        std::vector<PivotChain>{PivotChain{3}, PivotChain{2}, PivotChain{1}});

  const Matrix m = testsupport::corner_param_4x4(Rational(2), Rational(1));
  const Certificate four = dstab::certify(m, all);
  CHECK(four.kind == CertificateKind::DStable);
  REQUIRE_FALSE(four.all_chains.empty());
  CHECK(four.chain == four.all_chains.front());
  CHECK(std::find(four.all_chains.begin(), four.all_chains.end(),
                  PivotChain{4, 3}) != four.all_chains.end());
  CHECK(std::find(four.all_chains.begin(), four.all_chains.end(),
                  PivotChain{4, 1}) != four.all_chains.end());

  // Every enumerated chain replays to a verified certificate.
  for (const PivotChain& chain : four.all_chains) {
    CertifyOptions forced;
    forced.forced_chain = chain;
    const Certificate replay = dstab::certify(m, forced);
    CHECK(replay.kind == CertificateKind::DStable);
    CHECK(dstab::verify_certificate(m, replay));
  }

  CHECK_THROWS_AS(dstab::certify(Matrix::identity(7).negated(), all),
                  dstab::GuardError);
}

TEST_CASE("verdicts are stable under symmetric permutations") {
  const std::vector<std::vector<int>> perms3 = {
      {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& perm : perms3) {
    const Matrix good = testsupport::permuted(
        testsupport::corner_param_3x3(Rational(1, 2)), perm);
    CHECK(dstab::certify(good).kind == CertificateKind::DStable);

    const Matrix blind = testsupport::permuted(testsupport::missed_3x3(), perm);
    CHECK(dstab::certify(blind).kind == CertificateKind::Inconclusive);
  }
}

TEST_CASE("certificate replay catches tampering") {
  const Matrix m = testsupport::corner_param_4x4(Rational(2), Rational(1));
  const Certificate good = dstab::certify(m);
  REQUIRE(good.kind == CertificateKind::DStable);
  std::string why;

  Certificate wrong_value = good;
  wrong_value.levels[0].instances[3].value += Rational(1);
  CHECK_FALSE(dstab::verify_certificate(m, wrong_value, &why));
  CHECK(why.find("value mismatch") != std::string::npos);

  Certificate wrong_chain = good;
  wrong_chain.chain = PivotChain{4, 2};
  CHECK_FALSE(dstab::verify_certificate(m, wrong_chain, &why));

  Certificate dropped_level = good;
  dropped_level.levels.pop_back();
  CHECK_FALSE(dstab::verify_certificate(m, dropped_level, &why));

  Certificate wrong_base = good;
  wrong_base.base->indices = IndexSet::of(4, {1, 3});
  CHECK_FALSE(dstab::verify_certificate(m, wrong_base, &why));

  Certificate trimmed = good;
  trimmed.levels[0].instances.pop_back();
  CHECK_FALSE(dstab::verify_certificate(m, trimmed, &why));
  CHECK(why.find("incomplete") != std::string::npos);

  // A certificate transplanted onto a different matrix is rejected.
  const Certificate donor = certify_corner3(Rational(0));
  CHECK_FALSE(dstab::verify_certificate(testsupport::corner_param_3x3(Rational(1)),
                                        donor, &why));

  // Non-certifying kinds are not replayable.
  const Certificate inconclusive = dstab::certify(testsupport::missed_3x3());
  CHECK_FALSE(dstab::verify_certificate(testsupport::missed_3x3(), inconclusive, &why));
  CHECK(why.find("replayable") != std::string::npos);
}

TEST_CASE("random stable diagonally dominant matrices usually certify") {
  // Strict diagonal dominance with a negative diagonal implies D-stability;
  // the sufficient family is expected to catch many such matrices, and
  // every certificate it produces must replay.
  std::mt19937_64 rng(41u);
  int certified = 0;
  for (int rep = 0; rep < 40; ++rep) {
    const int n = 3 + static_cast<int>(rng() % 2);
    Matrix m = testsupport::random_matrix(rng, n, 1, 2);
    for (int i = 0; i < n; ++i) m.at(i, i) = Rational(-4);
    const Certificate cert = dstab::certify(m);
    if (cert.kind == CertificateKind::DStable) {
      ++certified;
      std::string why;
      const bool ok = dstab::verify_certificate(m, cert, &why);
      CHECK_MESSAGE(ok, why);
    }
  }
  CHECK(certified > 0);
}
