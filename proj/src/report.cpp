#include "dstab/report.hpp"

#include <nlohmann/json.hpp>
#include <sstream>

namespace dstab {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json index_set_json(const IndexSet& s) {
  ordered_json a = ordered_json::array();
  for (int i : s.labels()) a.push_back(i);
  return a;
}

IndexSet index_set_from(int n, const ordered_json& j) {
  if (!j.is_array()) throw ParseError("index set must be an array of labels");
  IndexSet s = IndexSet::empty(n);
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError("index labels must be integers");
    s = s.with(v.get<int>());
  }
  return s;
}

ordered_json rational_list_json(const std::vector<Rational>& v) {
  ordered_json a = ordered_json::array();
  for (const Rational& r : v) a.push_back(r.str());
  return a;
}

std::vector<Rational> rational_list_from(const ordered_json& j) {
  std::vector<Rational> out;
  for (const auto& v : j) out.push_back(Rational::parse(v.get<std::string>()));
  return out;
}

ordered_json instance_json(const MinorInequality& inst) {
  ordered_json j;
  j["pivot"] = inst.pivot;
  j["alpha"] = index_set_json(inst.alpha);
  j["beta"] = index_set_json(inst.beta);
  j["chi"] = inst.chi;
  j["value"] = inst.value.str();
  j["satisfied"] = inst.satisfied;
  return j;
}

MinorInequality instance_from(int n, const ordered_json& j) {
  MinorInequality inst;
  inst.pivot = j.at("pivot").get<int>();
  inst.alpha = index_set_from(n, j.at("alpha"));
  inst.beta = index_set_from(n, j.at("beta"));
  inst.chi = j.at("chi").get<int>();
  inst.value = Rational::parse(j.at("value").get<std::string>());
  inst.satisfied = j.at("satisfied").get<bool>();
  return inst;
}

std::string attempt_status_str(PivotAttempt::Status s) {
  switch (s) {
    case PivotAttempt::Status::ZeroPivot: return "zero_pivot";
    case PivotAttempt::Status::Violated: return "violated";
    case PivotAttempt::Status::SubmatrixFailed: return "submatrix_failed";
  }
  return "unknown";
}

PivotAttempt::Status attempt_status_from(const std::string& s) {
  if (s == "zero_pivot") return PivotAttempt::Status::ZeroPivot;
  if (s == "violated") return PivotAttempt::Status::Violated;
  if (s == "submatrix_failed") return PivotAttempt::Status::SubmatrixFailed;
  throw ParseError("unknown attempt status '" + s + "'");
}

CertificateKind kind_from(const std::string& s) {
  if (s == "d_stable") return CertificateKind::DStable;
  if (s == "not_stable") return CertificateKind::NotStable;
  if (s == "necessary_failed") return CertificateKind::NecessaryFailed;
  if (s == "counterexample") return CertificateKind::Counterexample;
  if (s == "inconclusive") return CertificateKind::Inconclusive;
  throw ParseError("unknown certificate kind '" + s + "'");
}

ordered_json certificate_json(const Certificate& cert) {
  ordered_json j;
  j["kind"] = to_string(cert.kind);

  ordered_json stab;
  stab["stable"] = cert.stability.stable;
  stab["boundary"] = cert.stability.boundary;
  stab["hurwitz_determinants"] = rational_list_json(cert.stability.determinants);
  j["stability"] = std::move(stab);

  if (cert.necessary) {
    ordered_json nec;
    nec["ok"] = cert.necessary->ok;
    nec["is_p"] = cert.necessary->neg_class.is_P;
    nec["is_p0"] = cert.necessary->neg_class.is_P0;
    nec["is_p0_plus"] = cert.necessary->neg_class.is_P0_plus;
    nec["order_sums"] = rational_list_json(cert.necessary->neg_class.order_sums);
    nec["witness"] = cert.necessary->neg_class.witness
                         ? index_set_json(*cert.necessary->neg_class.witness)
                         : ordered_json(nullptr);
    nec["failing_order"] = cert.necessary->neg_class.failing_order
                               ? ordered_json(*cert.necessary->neg_class.failing_order)
                               : ordered_json(nullptr);
    j["necessary"] = std::move(nec);
  } else {
    j["necessary"] = nullptr;
  }

  ordered_json chain = ordered_json::array();
  for (int k : cert.chain) chain.push_back(k);
  j["pivot_chain"] = std::move(chain);

  ordered_json levels = ordered_json::array();
  for (const ChainLevel& level : cert.levels) {
    ordered_json l;
    l["size"] = level.level_size;
    l["pivot"] = level.pivot;
    ordered_json instances = ordered_json::array();
    for (const MinorInequality& inst : level.instances) {
      instances.push_back(instance_json(inst));
    }
    l["instances"] = std::move(instances);
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);

  if (cert.base) {
    ordered_json base;
    base["indices"] = index_set_json(cert.base->indices);
    base["assumed"] = cert.base->assumed;
    base["axis_clear"] = cert.base->axis_clear;
    j["base"] = std::move(base);
  } else {
    j["base"] = nullptr;
  }

  ordered_json attempts = ordered_json::array();
  for (const PivotAttempt& attempt : cert.attempts) {
    ordered_json a;
    a["pivot"] = attempt.pivot;
    a["status"] = attempt_status_str(attempt.status);
    ordered_json instances = ordered_json::array();
    for (const MinorInequality& inst : attempt.instances) {
      instances.push_back(instance_json(inst));
    }
    a["instances"] = std::move(instances);
    attempts.push_back(std::move(a));
  }
  j["attempts"] = std::move(attempts);

  j["counterexample_d"] = cert.counterexample_d.empty()
                              ? ordered_json(nullptr)
                              : rational_list_json(cert.counterexample_d);

  if (cert.all_chains.empty()) {
    j["all_chains"] = nullptr;
  } else {
    ordered_json chains = ordered_json::array();
    for (const PivotChain& c : cert.all_chains) {
      ordered_json one = ordered_json::array();
      for (int k : c) one.push_back(k);
      chains.push_back(std::move(one));
    }
    j["all_chains"] = std::move(chains);
  }
  return j;
}

Certificate certificate_from(int n, const ordered_json& j) {
  Certificate cert;
  cert.kind = kind_from(j.at("kind").get<std::string>());

  const ordered_json& stab = j.at("stability");
  cert.stability.stable = stab.at("stable").get<bool>();
  cert.stability.boundary = stab.at("boundary").get<bool>();
  cert.stability.determinants = rational_list_from(stab.at("hurwitz_determinants"));

  if (!j.at("necessary").is_null()) {
    const ordered_json& nec = j.at("necessary");
    NecessaryReport report;
    report.ok = nec.at("ok").get<bool>();
    report.neg_class.is_P = nec.at("is_p").get<bool>();
    report.neg_class.is_P0 = nec.at("is_p0").get<bool>();
    report.neg_class.is_P0_plus = nec.at("is_p0_plus").get<bool>();
    report.neg_class.order_sums = rational_list_from(nec.at("order_sums"));
    if (!nec.at("witness").is_null()) {
      report.neg_class.witness = index_set_from(n, nec.at("witness"));
    }
    if (!nec.at("failing_order").is_null()) {
      report.neg_class.failing_order = nec.at("failing_order").get<int>();
    }
    cert.necessary = std::move(report);
  }

  for (const auto& k : j.at("pivot_chain")) cert.chain.push_back(k.get<int>());

  for (const auto& l : j.at("levels")) {
    ChainLevel level;
    level.level_size = l.at("size").get<int>();
    level.pivot = l.at("pivot").get<int>();
    for (const auto& inst : l.at("instances")) {
      level.instances.push_back(instance_from(n, inst));
    }
    cert.levels.push_back(std::move(level));
  }

  if (!j.at("base").is_null()) {
    BaseRecord base;
    base.indices = index_set_from(n, j.at("base").at("indices"));
    base.assumed = j.at("base").at("assumed").get<bool>();
    base.axis_clear = j.at("base").at("axis_clear").get<bool>();
    cert.base = std::move(base);
  }

  for (const auto& a : j.at("attempts")) {
    PivotAttempt attempt;
    attempt.pivot = a.at("pivot").get<int>();
    attempt.status = attempt_status_from(a.at("status").get<std::string>());
    for (const auto& inst : a.at("instances")) {
      attempt.instances.push_back(instance_from(n, inst));
    }
    cert.attempts.push_back(std::move(attempt));
  }

  if (!j.at("counterexample_d").is_null()) {
    cert.counterexample_d = rational_list_from(j.at("counterexample_d"));
  }
  if (!j.at("all_chains").is_null()) {
    for (const auto& c : j.at("all_chains")) {
      PivotChain chain;
      for (const auto& k : c) chain.push_back(k.get<int>());
      cert.all_chains.push_back(std::move(chain));
    }
  }
  return cert;
}

ordered_json oracle_json(const CounterexampleReport& report,
                         std::optional<std::uint64_t> seed,
                         std::optional<std::int64_t> trials) {
  ordered_json j;
  j["trials"] = trials ? ordered_json(*trials) : ordered_json(nullptr);
  j["seed"] = seed ? ordered_json(*seed) : ordered_json(nullptr);
  j["trials_run"] = report.trials_run;
  j["eigen_failures"] = report.eigen_failures;
  if (report.found) {
    ordered_json f;
    ordered_json entries = ordered_json::array();
    for (double v : report.found->entries) entries.push_back(v);
    f["entries"] = std::move(entries);
    f["trial_index"] = report.found->trial_index;
    f["abscissa"] = report.abscissa;
    f["margin"] = report.margin;
    j["found"] = std::move(f);
  } else {
    j["found"] = nullptr;
  }
  return j;
}

CounterexampleReport oracle_from(const ordered_json& j) {
  CounterexampleReport report;
  report.trials_run = j.at("trials_run").get<std::int64_t>();
  report.eigen_failures = j.at("eigen_failures").get<std::int64_t>();
  if (!j.at("found").is_null()) {
    const ordered_json& f = j.at("found");
    DiagonalSample sample;
    for (const auto& v : f.at("entries")) sample.entries.push_back(v.get<double>());
    sample.trial_index = f.at("trial_index").get<std::int64_t>();
    report.found = std::move(sample);
    report.abscissa = f.at("abscissa").get<double>();
    report.margin = f.at("margin").get<double>();
  }
  return report;
}

}  // namespace

std::string serialize_report(const ReportDocument& report) {
  ordered_json j;
  j["schema"] = kReportSchema;
  ordered_json tool;
  tool["name"] = kToolName;
  tool["version"] = kToolVersion;
  j["tool"] = std::move(tool);

  ordered_json input;
  input["digest"] = document_digest(report.matrix);
  input["matrix"] = ordered_json::parse(serialize_matrix_document(report.matrix));
  j["input"] = std::move(input);

  j["certificate"] = report.certificate ? certificate_json(*report.certificate)
                                        : ordered_json(nullptr);
  j["oracle"] = report.oracle
                    ? oracle_json(*report.oracle, report.oracle_seed, report.oracle_trials)
                    : ordered_json(nullptr);
  if (report.timing_ms) j["timing_ms"] = *report.timing_ms;
  return j.dump();
}

ReportDocument parse_report(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid report JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("schema") ||
      j["schema"].get<std::string>() != kReportSchema) {
    throw ParseError(std::string("expected a report with schema ") + kReportSchema);
  }
  ReportDocument report;
  report.matrix = parse_matrix_json(j.at("input").at("matrix").dump());
  const std::string stored_digest = j.at("input").at("digest").get<std::string>();
  if (stored_digest != document_digest(report.matrix)) {
    throw ParseError("input digest does not match the embedded matrix");
  }
  if (j.contains("certificate") && !j.at("certificate").is_null()) {
    report.certificate = certificate_from(report.matrix.n, j.at("certificate"));
  }
  if (j.contains("oracle") && !j.at("oracle").is_null()) {
    report.oracle = oracle_from(j.at("oracle"));
    if (!j.at("oracle").at("seed").is_null()) {
      report.oracle_seed = j.at("oracle").at("seed").get<std::uint64_t>();
    }
    if (!j.at("oracle").at("trials").is_null()) {
      report.oracle_trials = j.at("oracle").at("trials").get<std::int64_t>();
    }
  }
  if (j.contains("timing_ms") && !j.at("timing_ms").is_null()) {
    report.timing_ms = j.at("timing_ms").get<double>();
  }
  return report;
}

std::string describe_certificate(const Certificate& cert) {
  std::ostringstream out;
  out << "verdict: " << to_string(cert.kind) << "\n";
  out << "hurwitz: " << (cert.stability.stable ? "stable" : "not stable");
  if (cert.stability.boundary) out << " (boundary: a Hurwitz determinant is zero)";
  out << "; determinants:";
  for (const Rational& d : cert.stability.determinants) out << " " << d.str();
  out << "\n";
  if (cert.necessary) {
    out << "necessary (-M in P0+): " << (cert.necessary->ok ? "holds" : "fails");
    if (cert.necessary->neg_class.witness) {
      out << "; witness " << cert.necessary->neg_class.witness->str();
    }
    if (cert.necessary->neg_class.failing_order) {
      out << "; order-" << *cert.necessary->neg_class.failing_order << " minor sum <= 0";
    }
    out << "\n";
  }
  if (cert.kind == CertificateKind::DStable) {
    out << "pivot chain:";
    if (cert.chain.empty()) {
      out << " (none; closed form at n <= 2)";
    } else {
      for (int k : cert.chain) out << " " << k;
    }
    out << "\n";
    for (const ChainLevel& level : cert.levels) {
      Rational min_value = level.instances.empty() ? Rational(0)
                                                   : level.instances.front().value;
      for (const MinorInequality& inst : level.instances) {
        if (inst.value < min_value) min_value = inst.value;
      }
      out << "  level n=" << level.level_size << " pivot " << level.pivot << ": "
          << level.instances.size() << " inequalities hold (min value "
          << min_value.str() << ")\n";
    }
    if (cert.base) {
      out << "  base block " << cert.base->indices.str() << ": "
          << (cert.base->assumed ? "accepted by assumption" : "no imaginary-axis scaling")
          << "\n";
    }
    if (!cert.all_chains.empty()) {
      out << "  successful chains: " << cert.all_chains.size() << "\n";
    }
  }
  if (cert.kind == CertificateKind::Inconclusive) {
    for (const PivotAttempt& attempt : cert.attempts) {
      out << "  pivot " << attempt.pivot << ": ";
      switch (attempt.status) {
        case PivotAttempt::Status::ZeroPivot:
          out << "zero diagonal entry";
          break;
        case PivotAttempt::Status::SubmatrixFailed:
          out << "inequalities hold but no sub-chain certifies";
          break;
        case PivotAttempt::Status::Violated: {
          for (const MinorInequality& inst : attempt.instances) {
            if (!inst.satisfied) {
              out << "violated at alpha=" << inst.alpha.str()
                  << " beta=" << inst.beta.str() << " (value " << inst.value.str() << ")";
              break;
            }
          }
          break;
        }
      }
      out << "\n";
    }
  }
  if (!cert.counterexample_d.empty()) {
    out << "counterexample scaling:";
    for (const Rational& d : cert.counterexample_d) out << " " << d.str();
    out << "\n";
  }
  return out.str();
}

}  // namespace dstab
