#pragma once

#include <optional>
#include <string>

#include "dstab/certify.hpp"
#include "dstab/io.hpp"
#include "dstab/oracle.hpp"

namespace dstab {

inline constexpr const char* kReportSchema = "dstab-report/1";
inline constexpr const char* kToolName = "dstab";
inline constexpr const char* kToolVersion = "0.1.0";

// Self-contained result document: the (normalized) input, its digest, and
// either a certificate (check) or an oracle summary (oracle), or both.
struct ReportDocument {
  MatrixDocument matrix;
  std::optional<Certificate> certificate;
  std::optional<CounterexampleReport> oracle;
  std::optional<std::uint64_t> oracle_seed;
  std::optional<std::int64_t> oracle_trials;
  // Wall-clock milliseconds; populated only when timing is requested, so
  // default reports stay byte-identical across runs.
  std::optional<double> timing_ms;
};

// Canonical JSON (single line).  Deterministic for fixed inputs/flags.
std::string serialize_report(const ReportDocument& report);

// Parses a report produced by serialize_report; used by certificate
// replay.  Throws ParseError on malformed documents.
ReportDocument parse_report(const std::string& text);

// Human-oriented multi-line rendering of a certificate.
std::string describe_certificate(const Certificate& cert);

}  // namespace dstab
