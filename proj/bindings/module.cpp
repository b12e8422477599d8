// Python extension exposing the main operations: certification, the scaling
// oracle, parameter sweeps, certificate replay, and the document digest.
// Structured results cross the boundary as canonical JSON strings; the
// Python package decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "dstab/certify.hpp"
#include "dstab/io.hpp"
#include "dstab/oracle.hpp"
#include "dstab/report.hpp"
#include "dstab/sweep.hpp"

namespace py = pybind11;

namespace {

std::string check_report(const std::string& document,
                         const std::optional<std::vector<int>>& pivot_chain,
                         bool all_chains, int assume_level) {
  dstab::ReportDocument report;
  report.matrix = dstab::parse_matrix_document(document);
  dstab::CertifyOptions options;
  if (pivot_chain) options.forced_chain = *pivot_chain;
  options.all_chains = all_chains;
  options.assume_level = assume_level;
  report.certificate = dstab::certify(report.matrix.to_matrix(), options);
  return dstab::serialize_report(report);
}

std::string oracle_report(const std::string& document, std::int64_t trials,
                          std::uint64_t seed) {
  dstab::ReportDocument report;
  report.matrix = dstab::parse_matrix_document(document);
  report.oracle =
      dstab::search_counterexample(report.matrix.to_matrix(), trials, seed);
  report.oracle_seed = seed;
  report.oracle_trials = trials;
  return dstab::serialize_report(report);
}

std::string sweep_csv(const std::string& document,
                      const std::vector<std::string>& params,
                      std::int64_t oracle_trials, std::uint64_t seed) {
  const dstab::MatrixDocument doc = dstab::parse_matrix_document(document);
  dstab::SweepOptions options;
  for (const std::string& spec : params) {
    options.params.push_back(dstab::parse_sweep_param(spec));
  }
  options.oracle_trials = oracle_trials;
  options.seed = seed;
  return dstab::sweep_csv(options, dstab::run_sweep(doc, options));
}

py::tuple replay_report(const std::string& report_json) {
  const dstab::ReportDocument report = dstab::parse_report(report_json);
  if (!report.certificate) {
    return py::make_tuple(false, std::string("report carries no certificate"));
  }
  std::string why;
  const bool ok = dstab::verify_certificate(report.matrix.to_matrix(),
                                            *report.certificate, &why);
  return py::make_tuple(ok, why);
}

std::string document_digest(const std::string& document) {
  return dstab::document_digest(dstab::parse_matrix_document(document));
}

}  // namespace

PYBIND11_MODULE(_dstab, m) {
  m.doc() = "exact rational D-stability certification";
  m.attr("__version__") = dstab::kToolVersion;

  py::register_exception<dstab::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<dstab::DimensionError>(m, "DimensionError",
                                                PyExc_ValueError);

  m.def("check", &check_report, py::arg("document"),
        py::arg("pivot_chain") = std::nullopt, py::arg("all_chains") = false,
        py::arg("assume_level") = 0,
        py::call_guard<py::gil_scoped_release>(),
        "Certify a concrete matrix document (JSON or CSV text); returns a "
        "report as a JSON string.");
  m.def("oracle", &oracle_report, py::arg("document"),
        py::arg("trials") = 10000, py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>(),
        "Randomized search for a destabilizing positive diagonal scaling; "
        "returns a report as a JSON string.");
  m.def("sweep", &sweep_csv, py::arg("document"), py::arg("params"),
        py::arg("oracle_trials") = 0, py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>(),
        "Evaluate a parametric template over a rational grid; returns CSV "
        "text.");
  m.def("replay", &replay_report, py::arg("report_json"),
        "Re-verify the certificate inside a report; returns (ok, why).");
  m.def("digest", &document_digest, py::arg("document"),
        "Canonical digest of a matrix document.");
}
