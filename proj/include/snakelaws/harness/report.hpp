#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace snakelaws::harness {

/// Outcome of one comparison between a theoretical value and an estimate.
/// Numbers are stored already formatted so that exact rationals and doubles
/// share one schema.
struct ComparisonReport {
  std::string test_id;
  std::string citation;
  std::string theory;
  std::string estimate;
  std::string uncertainty;  // standard error, or "exact"
  double tolerance = 0.0;
  bool pass = false;
  double runtime_ms = 0.0;
  std::string seed_info;
  int criterion = 0;  // acceptance criterion this row belongs to (0: none)
};

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Numeric comparison: pass iff |estimate - theory| <= tolerance.
inline ComparisonReport numeric_report(std::string id, std::string citation, double theory, double estimate,
                                       double uncertainty, double tolerance) {
  ComparisonReport r;
  r.test_id = std::move(id);
  r.citation = std::move(citation);
  r.theory = format_double(theory);
  r.estimate = format_double(estimate);
  r.uncertainty = format_double(uncertainty);
  r.tolerance = tolerance;
  r.pass = std::isfinite(estimate) && std::abs(estimate - theory) <= tolerance;
  return r;
}

/// Monte Carlo gate: tolerance is k standard errors.
inline ComparisonReport se_gate_report(std::string id, std::string citation, double theory, double estimate,
                                       double std_error, double k = 4.0) {
  return numeric_report(std::move(id), std::move(citation), theory, estimate, std_error, k * std_error);
}

/// Exact comparison of canonical string forms.
inline ComparisonReport exact_report(std::string id, std::string citation, std::string theory, std::string estimate) {
  ComparisonReport r;
  r.test_id = std::move(id);
  r.citation = std::move(citation);
  r.pass = theory == estimate;
  r.theory = std::move(theory);
  r.estimate = std::move(estimate);
  r.uncertainty = "exact";
  return r;
}

inline const char* kCsvHeader = "test_id,citation,theory,estimate,uncertainty,tolerance,verdict,runtime_ms,seed";

namespace detail {
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}
}  // namespace detail

/// CSV with a fixed column order. With include_timing = false the runtime
/// column is written as 0 so that reruns are byte-identical.
inline void write_csv(std::ostream& os, const std::vector<ComparisonReport>& reports, bool include_timing = true) {
  os << kCsvHeader << '\n';
  for (const auto& r : reports) {
    os << detail::csv_field(r.test_id) << ',' << detail::csv_field(r.citation) << ',' << detail::csv_field(r.theory) << ','
       << detail::csv_field(r.estimate) << ',' << detail::csv_field(r.uncertainty) << ',' << format_double(r.tolerance) << ','
       << (r.pass ? "pass" : "fail") << ',' << (include_timing ? format_double(r.runtime_ms) : std::string("0")) << ','
       << detail::csv_field(r.seed_info) << '\n';
  }
}

inline nlohmann::ordered_json to_json(const ComparisonReport& r, bool include_timing = true) {
  nlohmann::ordered_json j;
  j["test_id"] = r.test_id;
  j["citation"] = r.citation;
  j["theory"] = r.theory;
  j["estimate"] = r.estimate;
  j["uncertainty"] = r.uncertainty;
  j["tolerance"] = r.tolerance;
  j["verdict"] = r.pass ? "pass" : "fail";
  j["runtime_ms"] = include_timing ? r.runtime_ms : 0.0;
  j["seed"] = r.seed_info;
  return j;
}

/// FNV-1a over every report field except runtime_ms.
inline std::uint64_t report_digest(const std::vector<ComparisonReport>& reports) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0x1f;
    h *= 0x100000001b3ULL;
  };
  for (const auto& r : reports) {
    feed(r.test_id);
    feed(r.citation);
    feed(r.theory);
    feed(r.estimate);
    feed(r.uncertainty);
    feed(format_double(r.tolerance));
    feed(r.pass ? "pass" : "fail");
    feed(r.seed_info);
  }
  return h;
}

}  // namespace snakelaws::harness
