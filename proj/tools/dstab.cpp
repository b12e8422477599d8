// dstab: decide and certify matrix D-stability with exact arithmetic.
//
// Subcommands:
//   check  -- run the certification pipeline on one matrix
//   oracle -- randomized search for a destabilizing positive scaling
//   sweep  -- evaluate a parametric template over a rational grid
//
// Exit codes: check 0=certified, 1=inconclusive/replay-failed, 2=not
// stable or necessary condition failed; oracle 3=counterexample found,
// 0=none; 64 usage errors, 65 malformed input, 70 internal failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dstab/certify.hpp"
#include "dstab/io.hpp"
#include "dstab/oracle.hpp"
#include "dstab/report.hpp"
#include "dstab/sweep.hpp"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitInternal = 70;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dstab::ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    if (payload.empty() || payload.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw dstab::ParseError("cannot write '" + out_path + "'");
  out << payload;
  if (payload.empty() || payload.back() != '\n') out << "\n";
}

dstab::MatrixDocument load_concrete(const std::string& path) {
  dstab::MatrixDocument doc = dstab::parse_matrix_document(read_file(path));
  if (!doc.concrete()) {
    throw dstab::ParseError(
        "matrix has unbound parameters; bind them or use the sweep command");
  }
  return doc;
}

dstab::PivotChain parse_chain(const std::string& text) {
  dstab::PivotChain chain;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      chain.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw dstab::ParseError("pivot chain must be comma-separated integers");
    }
  }
  return chain;
}

struct CommonFlags {
  std::string format = "json";
  std::string out_path;
  bool timing = false;
};

std::string render_report(const dstab::ReportDocument& report,
                          const CommonFlags& flags) {
  if (flags.format == "text") {
    std::ostringstream out;
    out << "input digest: " << dstab::document_digest(report.matrix) << "\n";
    if (report.certificate) {
      out << dstab::describe_certificate(*report.certificate);
    }
    if (report.oracle) {
      if (report.oracle->found) {
        out << "counterexample at trial " << report.oracle->found->trial_index
            << ": abscissa " << report.oracle->abscissa << ", scaling";
        for (double v : report.oracle->found->entries) out << " " << v;
        out << "\n";
      } else {
        out << "no counterexample in " << report.oracle->trials_run
            << " trials (" << report.oracle->eigen_failures
            << " eigenvalue failures)\n";
      }
    }
    if (report.timing_ms) out << "elapsed: " << *report.timing_ms << " ms\n";
    return out.str();
  }
  return dstab::serialize_report(report);
}

int exit_code_for(const dstab::Certificate& cert) {
  switch (cert.kind) {
    case dstab::CertificateKind::DStable: return 0;
    case dstab::CertificateKind::Inconclusive: return 1;
    case dstab::CertificateKind::NotStable:
    case dstab::CertificateKind::NecessaryFailed: return 2;
    case dstab::CertificateKind::Counterexample: return 3;
  }
  return kExitInternal;
}

int run_check(const std::string& matrix_path, const std::string& replay_path,
              const std::string& chain_text, bool all_chains, int assume_level,
              const CommonFlags& flags) {
  if (!replay_path.empty()) {
    const dstab::ReportDocument report = dstab::parse_report(read_file(replay_path));
    if (!report.certificate) {
      std::cerr << "replay: report carries no certificate\n";
      return 1;
    }
    std::string why;
    const bool ok = dstab::verify_certificate(report.matrix.to_matrix(),
                                              *report.certificate, &why);
    if (ok) {
      write_output(flags.out_path, "replay: certificate verified");
      return 0;
    }
    write_output(flags.out_path, "replay: verification failed: " + why);
    return 1;
  }

  const auto start = std::chrono::steady_clock::now();
  dstab::ReportDocument report;
  report.matrix = load_concrete(matrix_path);

  dstab::CertifyOptions options;
  if (!chain_text.empty()) options.forced_chain = parse_chain(chain_text);
  options.all_chains = all_chains;
  options.assume_level = assume_level;

  report.certificate = dstab::certify(report.matrix.to_matrix(), options);
  if (flags.timing) {
    report.timing_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  }
  write_output(flags.out_path, render_report(report, flags));
  return exit_code_for(*report.certificate);
}

int run_oracle(const std::string& matrix_path, std::int64_t trials,
               std::uint64_t seed, const CommonFlags& flags) {
  const auto start = std::chrono::steady_clock::now();
  dstab::ReportDocument report;
  report.matrix = load_concrete(matrix_path);

  const dstab::Matrix m = report.matrix.to_matrix();
  report.oracle = dstab::search_counterexample(m, trials, seed);
  report.oracle_seed = seed;
  report.oracle_trials = trials;
  if (report.oracle->found) {
    // Record the scaling exactly (doubles are dyadic rationals) so the
    // certificate is self-contained.
    dstab::Certificate cert;
    cert.kind = dstab::CertificateKind::Counterexample;
    cert.stability = dstab::hurwitz_stable(m);
    for (double v : report.oracle->found->entries) {
      cert.counterexample_d.push_back(dstab::Rational(mpq_class(v)));
    }
    report.certificate = std::move(cert);
  }
  if (flags.timing) {
    report.timing_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  }
  write_output(flags.out_path, render_report(report, flags));
  return report.oracle->found ? 3 : 0;
}

int run_sweep(const std::string& template_path,
              const std::vector<std::string>& param_specs,
              std::int64_t oracle_trials, std::uint64_t seed,
              const CommonFlags& flags) {
  const dstab::MatrixDocument doc =
      dstab::parse_matrix_document(read_file(template_path));

  dstab::SweepOptions options;
  for (const std::string& spec : param_specs) {
    options.params.push_back(dstab::parse_sweep_param(spec));
  }
  options.oracle_trials = oracle_trials;
  options.seed = seed;

  const std::vector<dstab::SweepRow> rows = dstab::run_sweep(doc, options);
  write_output(flags.out_path, dstab::sweep_csv(options, rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decide and certify matrix D-stability"};
  app.set_version_flag("--version", std::string("dstab ") + dstab::kToolVersion);
  app.require_subcommand(1);

  CommonFlags flags;
  std::uint64_t seed = 0;
  app.add_option("--format", flags.format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--seed", seed, "seed for randomized sampling")
      ->capture_default_str();
  app.fallthrough();

  auto* check = app.add_subcommand("check", "certify one matrix");
  std::string check_file, replay_path, chain_text;
  bool all_chains = false;
  int assume_level = 0;
  check->add_option("matrix", check_file, "matrix file (JSON or CSV)");
  check->add_option("--replay", replay_path,
                    "re-verify the certificate inside a report file");
  check->add_option("--pivot-chain", chain_text,
                    "follow this comma-separated pivot chain instead of searching");
  check->add_flag("--all-chains", all_chains,
                  "enumerate every successful chain (n <= 6)");
  check->add_option("--assume-submatrix-dstable", assume_level,
                    "accept submatrices of this size without checking");
  check->add_option("--out", flags.out_path, "write output here instead of stdout");
  check->add_flag("--timing", flags.timing, "include wall-clock timing in the report");

  auto* oracle = app.add_subcommand("oracle", "search for a destabilizing scaling");
  std::string oracle_file;
  std::int64_t trials = 10000;
  oracle->add_option("matrix", oracle_file, "matrix file (JSON or CSV)")->required();
  oracle->add_option("--trials", trials, "number of randomized trials")
      ->capture_default_str();
  oracle->add_option("--out", flags.out_path, "write output here instead of stdout");
  oracle->add_flag("--timing", flags.timing, "include wall-clock timing in the report");

  auto* sweep = app.add_subcommand("sweep", "evaluate a parametric template on a grid");
  std::string sweep_file;
  std::vector<std::string> param_specs;
  std::int64_t sweep_trials = 0;
  sweep->add_option("template", sweep_file, "template file (JSON)")->required();
  sweep->add_option("--param", param_specs,
                    "NAME=MIN:MAX:STEP grid axis or NAME=EXPR derived value")
      ->required();
  sweep->add_option("--oracle-trials", sweep_trials,
                    "also run the scaling oracle per grid point");
  sweep->add_option("--out", flags.out_path, "write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (check->parsed()) {
      if (check_file.empty() == replay_path.empty()) {
        std::cerr << "check needs exactly one of: a matrix file, or --replay\n";
        return kExitUsage;
      }
      if (!replay_path.empty() &&
          (!chain_text.empty() || all_chains || assume_level != 0)) {
        std::cerr << "--replay cannot be combined with search options\n";
        return kExitUsage;
      }
      if (all_chains && !chain_text.empty()) {
        std::cerr << "--all-chains and --pivot-chain are mutually exclusive\n";
        return kExitUsage;
      }
      return run_check(check_file, replay_path, chain_text, all_chains,
                       assume_level, flags);
    }
    if (oracle->parsed()) {
      return run_oracle(oracle_file, trials, seed, flags);
    }
    if (sweep->parsed()) {
      return run_sweep(sweep_file, param_specs, sweep_trials, seed, flags);
    }
    return kExitUsage;
  } catch (const dstab::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const dstab::DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const dstab::GuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const dstab::Error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
