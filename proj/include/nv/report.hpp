#pragma once

// Machine-readable reports: one flat record per architecture, rendered as
// JSON or RFC-4180 CSV with the same columns, and parsed back.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nv/stats.hpp"
#include "nv/theory.hpp"

namespace nv {

struct ReportRecord {
  std::vector<unsigned> arch;
  std::vector<unsigned> degrees;
  std::uint64_t expdim = 0;
  std::optional<std::uint64_t> expdim_refined;
  // Absent when sampling failed for this architecture.
  std::optional<std::uint64_t> dim_actual;
  std::optional<std::uint64_t> fiber_dim;
  std::optional<bool> defective;
  std::optional<std::string> verdict;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::string domain;
  std::optional<std::string> prime;  // decimal
  std::uint64_t pivot = 0;
  std::uint64_t wall_ms = 0;

  bool operator==(const ReportRecord&) const = default;
};

// Column order of the CSV header.
const std::vector<std::string>& report_columns();

ReportRecord make_record(const DimReport& report, const std::optional<Verdict>& verdict,
                         std::uint64_t wall_ms = 0);

enum class ReportFormat { Json, Csv };

// JSON: an array of objects with sorted keys; CSV: header plus one line per
// record, CRLF line ends.
std::string render_report(const std::vector<ReportRecord>& records, ReportFormat format);
// A single record as a JSON object.
std::string render_record(const ReportRecord& record);

// Writes to path, or to stdout when path is "-". Throws IoError naming path.
void emit_report(const std::vector<ReportRecord>& records, ReportFormat format,
                 const std::string& path);
void write_text(const std::string& text, const std::string& path);

// Inverse of render_report. Throws PreconditionError on malformed input.
std::vector<ReportRecord> parse_report(const std::string& text, ReportFormat format);
ReportRecord parse_record(const std::string& json_object);

}  // namespace nv
