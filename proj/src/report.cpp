#include "nv/report.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "nv/errors.hpp"

namespace nv {

using nlohmann::json;

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> columns{
      "arch",   "degrees", "expdim", "expdim_refined", "dim_actual", "fiber_dim", "defective",
      "verdict", "trials", "seed",   "domain",         "prime",      "pivot",     "wall_ms"};
  return columns;
}

ReportRecord make_record(const DimReport& report, const std::optional<Verdict>& verdict,
                         std::uint64_t wall_ms) {
  ReportRecord r;
  r.arch = report.arch.widths();
  r.degrees = report.arch.degrees();
  r.expdim = report.expdim_general;
  r.expdim_refined = report.expdim_refined;
  r.dim_actual = report.dim_actual;
  r.fiber_dim = report.fiber_dim;
  r.defective = report.defective;
  if (verdict) r.verdict = verdict->to_string();
  r.trials = report.trials;
  r.seed = report.seed;
  r.domain = report.domain.name();
  if (report.domain.kind == Domain::Kind::Prime) r.prime = std::to_string(report.domain.prime);
  r.pivot = report.pivot;
  r.wall_ms = wall_ms;
  return r;
}

namespace {

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json to_json(const ReportRecord& r) {
  json j = json::object();
  j["arch"] = r.arch;
  j["degrees"] = r.degrees;
  j["expdim"] = r.expdim;
  j["expdim_refined"] = optional_json(r.expdim_refined);
  j["dim_actual"] = optional_json(r.dim_actual);
  j["fiber_dim"] = optional_json(r.fiber_dim);
  j["defective"] = optional_json(r.defective);
  j["verdict"] = optional_json(r.verdict);
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["domain"] = r.domain;
  j["prime"] = optional_json(r.prime);
  j["pivot"] = r.pivot;
  j["wall_ms"] = r.wall_ms;
  return j;
}

template <class T>
std::optional<T> optional_from(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

ReportRecord from_json(const json& j) {
  if (!j.is_object()) throw PreconditionError("report entry is not an object");
  if (j.size() != report_columns().size())
    throw PreconditionError("report entry has " + std::to_string(j.size()) + " keys");
  ReportRecord r;
  r.arch = j.at("arch").get<std::vector<unsigned>>();
  r.degrees = j.at("degrees").get<std::vector<unsigned>>();
  r.expdim = j.at("expdim").get<std::uint64_t>();
  r.expdim_refined = optional_from<std::uint64_t>(j, "expdim_refined");
  r.dim_actual = optional_from<std::uint64_t>(j, "dim_actual");
  r.fiber_dim = optional_from<std::uint64_t>(j, "fiber_dim");
  r.defective = optional_from<bool>(j, "defective");
  r.verdict = optional_from<std::string>(j, "verdict");
  r.trials = j.at("trials").get<std::uint64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.domain = j.at("domain").get<std::string>();
  r.prime = optional_from<std::string>(j, "prime");
  r.pivot = j.at("pivot").get<std::uint64_t>();
  r.wall_ms = j.at("wall_ms").get<std::uint64_t>();
  return r;
}

std::string join_list(const std::vector<unsigned>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <class T>
std::string opt_text(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, std::string>)
    return *v;
  else if constexpr (std::is_same_v<T, bool>)
    return *v ? "true" : "false";
  else
    return std::to_string(*v);
}

std::vector<std::string> csv_cells(const ReportRecord& r) {
  return {join_list(r.arch),       join_list(r.degrees),     std::to_string(r.expdim),
          opt_text(r.expdim_refined), opt_text(r.dim_actual), opt_text(r.fiber_dim),
          opt_text(r.defective),   opt_text(r.verdict),      std::to_string(r.trials),
          std::to_string(r.seed),  r.domain,                 opt_text(r.prime),
          std::to_string(r.pivot), std::to_string(r.wall_ms)};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"' && field.empty()) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      field_started = true;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      field_started = false;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) throw PreconditionError("unterminated quoted CSV field");
  if (field_started || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::uint64_t parse_u64(const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || s.front() == '-')
    throw PreconditionError("expected an unsigned integer, got '" + s + "'");
  return v;
}

std::optional<std::uint64_t> parse_opt_u64(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_u64(s);
}

std::optional<bool> parse_opt_bool(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "true") return true;
  if (s == "false") return false;
  throw PreconditionError("expected true or false, got '" + s + "'");
}

std::optional<std::string> parse_opt_text(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

ReportRecord from_cells(const std::vector<std::string>& c) {
  if (c.size() != report_columns().size())
    throw PreconditionError("CSV row has " + std::to_string(c.size()) + " fields");
  ReportRecord r;
  r.arch = parse_uint_list(c[0]);
  r.degrees = parse_uint_list(c[1]);
  r.expdim = parse_u64(c[2]);
  r.expdim_refined = parse_opt_u64(c[3]);
  r.dim_actual = parse_opt_u64(c[4]);
  r.fiber_dim = parse_opt_u64(c[5]);
  r.defective = parse_opt_bool(c[6]);
  r.verdict = parse_opt_text(c[7]);
  r.trials = parse_u64(c[8]);
  r.seed = parse_u64(c[9]);
  r.domain = c[10];
  r.prime = parse_opt_text(c[11]);
  r.pivot = parse_u64(c[12]);
  r.wall_ms = parse_u64(c[13]);
  return r;
}

}  // namespace

std::string render_record(const ReportRecord& record) { return to_json(record).dump(2) + "\n"; }

std::string render_report(const std::vector<ReportRecord>& records, ReportFormat format) {
  if (format == ReportFormat::Json) {
    json arr = json::array();
    for (const auto& r : records) arr.push_back(to_json(r));
    return arr.dump(2) + "\n";
  }
  std::string out;
  auto append_row = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_field(cells[i]);
    out += "\r\n";
  };
  append_row(report_columns());
  for (const auto& r : records) append_row(csv_cells(r));
  return out;
}

void write_text(const std::string& text, const std::string& path) {
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing: " + std::strerror(errno));
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + path + ": " + std::strerror(errno));
}

void emit_report(const std::vector<ReportRecord>& records, ReportFormat format,
                 const std::string& path) {
  write_text(render_report(records, format), path);
}

ReportRecord parse_record(const std::string& json_object) {
  try {
    return from_json(json::parse(json_object));
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("malformed report: ") + e.what());
  }
}

std::vector<ReportRecord> parse_report(const std::string& text, ReportFormat format) {
  std::vector<ReportRecord> out;
  if (format == ReportFormat::Json) {
    try {
      const json arr = json::parse(text);
      if (!arr.is_array()) throw PreconditionError("JSON report is not an array");
      for (const auto& j : arr) out.push_back(from_json(j));
    } catch (const json::exception& e) {
      throw PreconditionError(std::string("malformed report: ") + e.what());
    }
    return out;
  }
  const auto rows = parse_csv(text);
  if (rows.empty() || rows.front() != report_columns())
    throw PreconditionError("CSV report header does not match the report columns");
  for (std::size_t i = 1; i < rows.size(); ++i) out.push_back(from_cells(rows[i]));
  return out;
}

}  // namespace nv
