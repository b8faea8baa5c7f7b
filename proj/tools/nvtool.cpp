// nvtool: dimensions, theorem checks, scans and Veronese utilities for
// polynomial networks.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "nv/architecture.hpp"
#include "nv/errors.hpp"
#include "nv/report.hpp"
#include "nv/scan.hpp"
#include "nv/stats.hpp"
#include "nv/theory.hpp"
#include "nv/veronese.hpp"

namespace {

using nlohmann::json;

enum Exit { kOk = 0, kFailure = 1, kInvalid = 2, kExhausted = 3, kIo = 4 };

struct DomainArgs {
  std::string field = "prime";
  std::string prime = "auto";
};

void add_domain_options(CLI::App* cmd, DomainArgs& args) {
  cmd->add_option("--field", args.field, "Sampling domain")
      ->check(CLI::IsMember({"prime", "rational"}))
      ->capture_default_str();
  cmd->add_option("--prime", args.prime, "Modulus: auto or a prime in (2^60, 2^63)")
      ->capture_default_str();
}

// NV_SEED wins over --seed.
std::uint64_t effective_seed(std::uint64_t seed) {
  const char* env = std::getenv("NV_SEED");
  if (!env || !*env) return seed;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw nv::PreconditionError(std::string("NV_SEED is not an integer: ") + env);
  return v;
}

nv::Domain resolve(const DomainArgs& args, std::uint64_t seed) {
  if (args.field == "rational") return nv::Domain::rational();
  if (args.prime == "auto") return nv::Domain::prime_field(nv::choose_prime(seed));
  std::uint64_t p = 0;
  try {
    std::size_t used = 0;
    p = std::stoull(args.prime, &used);
    if (used != args.prime.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw nv::PreconditionError("--prime expects auto or a decimal prime, got " + args.prime);
  }
  nv::PrimeField check(p);  // validates range and primality
  return nv::Domain::prime_field(p);
}

nv::Architecture parse_arch(const std::string& widths, const std::string& degrees) {
  return nv::Architecture::validate(nv::parse_uint_list(widths), nv::parse_uint_list(degrees));
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

// ---- dims -----------------------------------------------------------------

struct DimsArgs {
  std::string widths;
  std::string degrees;
  std::size_t tries = 10;
  std::uint64_t seed = 1;
  DomainArgs domain;
  bool json = false;
  std::string out;
  bool confirm_rational = false;
  bool timing = false;
  bool blocks = false;
};

int run_dims(const DimsArgs& a) {
  const auto arch = parse_arch(a.widths, a.degrees);
  nv::StatsOptions options;
  options.tries = a.tries;
  options.seed = effective_seed(a.seed);
  options.domain = resolve(a.domain, options.seed);
  options.confirm_rational = a.confirm_rational;
  options.blocks = a.blocks;

  const auto t0 = std::chrono::steady_clock::now();
  const auto report = nv::neurovariety_stats(arch, options);
  std::optional<nv::Verdict> verdict;
  if (arch.depth() >= 2) verdict = nv::theorem_verdict(arch);
  const std::uint64_t ms =
      a.timing ? std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - t0)
                     .count()
               : 0;

  std::string text;
  if (a.json) {
    text = nv::render_record(nv::make_record(report, verdict, ms));
  } else {
    std::ostringstream os;
    os << "architecture      " << arch.to_string() << "\n"
       << "free weights      " << report.free_weights << "\n"
       << "target dimension  " << report.target_dim << "\n"
       << "expdim            " << report.expdim_general << "\n"
       << "expdim_refined    "
       << (report.expdim_refined ? std::to_string(*report.expdim_refined) : "n/a") << "\n"
       << "dim_actual        " << report.dim_actual << "\n"
       << "fiber_dim         " << report.fiber_dim << "\n"
       << "defective         " << yes_no(report.defective) << "\n";
    if (verdict) os << "verdict           " << verdict->to_string() << "\n";
    os << "trials            " << report.trials << " (pivot resamples " << report.pivot_failures
       << ")\n"
       << "seed              " << report.seed << "\n"
       << "domain            " << report.domain.name();
    if (report.domain.kind == nv::Domain::Kind::Prime) os << " p=" << report.domain.prime;
    os << "\npivot             coefficient " << report.pivot
       << " (x0^D) for each output independently\n";
    if (report.rational_rank)
      os << "rational rank     " << *report.rational_rank << " at the lifted witness"
         << (*report.rational_rank == report.dim_actual ? "" : "  MISMATCH") << "\n";
    if (report.blocks) {
      os << "block ranks      ";
      for (std::size_t l = 0; l < report.blocks->layer_ranks.size(); ++l)
        os << " W" << l + 1 << "=" << report.blocks->layer_ranks[l];
      os << "\n  normal blocks   " << report.blocks->normal_rank << "\n"
         << "  last blocks     " << report.blocks->last_rank << "\n"
         << "  total           " << report.blocks->total_rank << "\n";
    }
    if (a.timing) os << "wall_ms           " << ms << "\n";
    text = os.str();
  }
  nv::write_text(text, a.out.empty() ? "-" : a.out);
  return kOk;
}

// ---- check ----------------------------------------------------------------

int run_check(const std::string& widths, const std::string& degrees, bool as_json,
              const std::string& out) {
  const auto arch = parse_arch(widths, degrees);
  const auto v = nv::theorem_verdict(arch);
  std::string text;
  if (as_json) {
    json j;
    j["arch"] = arch.widths();
    j["degrees"] = arch.degrees();
    j["verdict"] = v.to_string();
    j["room"] = json::array();
    for (const auto& r : v.room.records)
      j["room"].push_back({{"layer", r.layer}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}});
    j["ah"] = v.ah ? json{{"nvars", v.ah->nvars},
                          {"degree", v.ah->degree},
                          {"secant", v.ah->secant},
                          {"defective", v.ah->defective}}
                   : json(nullptr);
    j["filling"] = v.filling ? json{{"single_output_expdim", v.filling->single_output_expdim},
                                    {"parameter_count", v.filling->parameter_count},
                                    {"holds", v.filling->holds}}
                             : json(nullptr);
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "architecture  " << arch.to_string() << "\n";
    for (const auto& r : v.room.records)
      os << "room i=" << r.layer << "      " << r.lhs << (r.holds ? " < " : " >= ") << r.rhs
         << (r.holds ? "  holds" : "  fails") << "\n";
    if (v.ah)
      os << "last secant   Sec_" << v.ah->secant << " of degree-" << v.ah->degree
         << " Veronese of P^" << v.ah->nvars - 1 << ": "
         << (v.ah->defective ? "defective" : "not defective") << "\n";
    if (v.filling)
      os << "single-output expdim " << v.filling->single_output_expdim << " vs parameters "
         << v.filling->parameter_count << (v.filling->holds ? "  holds" : "  fails") << "\n";
    os << "verdict       " << v.to_string() << "\n";
    text = os.str();
  }
  nv::write_text(text, out.empty() ? "-" : out);
  return kOk;
}

// ---- scan -----------------------------------------------------------------

struct ScanArgs {
  nv::ScanSpec spec;
  DomainArgs domain;
  std::string format;
  bool json = false;
  std::string out;
};

int run_scan(ScanArgs a) {
  a.spec.seed = effective_seed(a.spec.seed);
  a.spec.domain = resolve(a.domain, a.spec.seed);
  if (a.json) a.format = "json";
  if (a.format.empty() && !a.out.empty())
    a.format = a.out.size() >= 4 && a.out.substr(a.out.size() - 4) == ".csv" ? "csv" : "json";

  const auto rows = nv::scan(a.spec);
  std::size_t defective = 0, disagreements = 0, errors = 0;
  std::ostringstream summary;
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      ++errors;
      summary << "error         " << r.arch.to_string() << ": " << r.error << "\n";
    }
    if (r.report && r.report->defective) ++defective;
    if (!r.agreement) {
      ++disagreements;
      summary << "disagreement  " << r.arch.to_string() << " verdict " << r.verdict->to_string()
              << " dim_actual " << r.report->dim_actual << " expdim "
              << r.report->applicable_expdim() << "\n";
    }
  }
  summary << "rows " << rows.size() << ", defective " << defective << ", disagreements "
          << disagreements << ", errors " << errors << "\n";

  if (a.format.empty()) {
    std::ostringstream table;
    for (const auto& r : rows) {
      table << r.arch.to_string();
      if (r.report)
        table << "  expdim " << r.report->applicable_expdim() << "  dim " << r.report->dim_actual
              << (r.report->defective ? "  defective" : "");
      if (r.verdict) table << "  " << r.verdict->to_string();
      if (!r.agreement) table << "  DISAGREES";
      table << "\n";
    }
    std::cout << table.str() << summary.str();
    return kOk;
  }
  std::vector<nv::ReportRecord> records;
  for (const auto& r : rows) records.push_back(nv::make_record(r));
  const auto format = a.format == "csv" ? nv::ReportFormat::Csv : nv::ReportFormat::Json;
  if (a.out.empty() || a.out == "-") {
    nv::emit_report(records, format, "-");
    std::cerr << summary.str();
  } else {
    nv::emit_report(records, format, a.out);
    std::cout << summary.str();
  }
  return kOk;
}

// ---- veronese-secant --------------------------------------------------------

struct SecantArgs {
  unsigned nvars = 2;
  unsigned degree = 2;
  unsigned secant = 1;
  std::size_t tries = 10;
  std::uint64_t seed = 1;
  bool json = false;
  bool table = false;
  bool slow = false;
};

json secant_entry(unsigned nvars, unsigned deg, unsigned s, std::size_t tries, std::uint64_t seed) {
  const auto dim = nv::empirical_secant_dim(nvars, deg, s, tries, seed);
  const auto expected = nv::expected_secant_dim(nvars, deg, s);
  const bool table = nv::ah_secant_defective(nvars, deg, s);
  return {{"nvars", nvars},     {"degree", deg},          {"secant", s},
          {"dim", dim},         {"expected", expected},   {"defective", dim < expected},
          {"table", table},     {"agrees", (dim < expected) == table}};
}

int run_secant(const SecantArgs& a) {
  const std::uint64_t seed = effective_seed(a.seed);
  if (!a.table) {
    const auto e = secant_entry(a.nvars, a.degree, a.secant, a.tries, seed);
    if (a.json) {
      std::cout << e.dump(2) << "\n";
    } else {
      std::cout << "Sec_" << a.secant << " of the degree-" << a.degree << " Veronese of P^"
                << a.nvars - 1 << ": dim " << e["dim"] << ", expected " << e["expected"]
                << (e["defective"].get<bool>() ? ", defective" : ", not defective")
                << (e["agrees"].get<bool>() ? "" : "  (disagrees with the classification table)")
                << "\n";
    }
    return kOk;
  }
  // Whole grid nvars <= 5, deg <= 4, s <= 10 with ambient <= 70; the (4,4,9)
  // row only with --slow.
  json rows = json::array();
  std::size_t mismatches = 0;
  for (unsigned n = 2; n <= 5; ++n)
    for (unsigned d = 1; d <= 4; ++d) {
      if (nv::binomial(n - 1 + d, n - 1) > 70) continue;
      for (unsigned s = 1; s <= 10; ++s) {
        if (!a.slow && n == 4 && d == 4 && s == 9) continue;
        auto e = secant_entry(n, d, s, a.tries, seed);
        if (!e["agrees"].get<bool>()) ++mismatches;
        rows.push_back(std::move(e));
      }
    }
  if (a.json) {
    std::cout << rows.dump(2) << "\n";
  } else {
    for (const auto& e : rows)
      if (e["defective"].get<bool>() || !e["agrees"].get<bool>())
        std::cout << "(" << e["nvars"] << "," << e["degree"] << "," << e["secant"] << ") dim "
                  << e["dim"] << " expected " << e["expected"]
                  << (e["agrees"].get<bool>() ? "" : "  MISMATCH") << "\n";
    std::cout << rows.size() << " cases, " << mismatches << " mismatches\n";
  }
  return kOk;
}

// ---- power-indep ------------------------------------------------------------

int run_power(nv::PowerScanOptions o, bool as_json) {
  o.seed = effective_seed(o.seed);
  const auto rep = nv::power_threshold_scan(o);
  if (as_json) {
    json j{{"nvars", o.nvars},
           {"count", o.count},
           {"degree", o.degree},
           {"trials", o.trials},
           {"seed", o.seed},
           {"threshold", rep.threshold},
           {"independent_at_threshold", rep.independent_at_threshold}};
    if (o.find_minimal) {
      j["minimal_r"] = rep.minimal_r;
      j["monotonicity_violations"] = rep.monotonicity_violations;
    }
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << "d=" << o.nvars << " k=" << o.count << " s=" << o.degree << ": "
            << rep.independent_at_threshold << "/" << o.trials << " independent at r="
            << rep.threshold << "\n";
  if (o.find_minimal) {
    std::map<std::size_t, std::size_t> histogram;
    for (auto r : rep.minimal_r) ++histogram[r];
    std::cout << "minimal r:";
    for (auto [r, n] : histogram) std::cout << " " << r << "x" << n;
    std::cout << "\nmonotonicity violations: " << rep.monotonicity_violations << "\n";
  }
  return kOk;
}

// ---- relations --------------------------------------------------------------

int run_relations(unsigned nvars, const std::string& degrees, nv::RelationOptions o,
                  bool as_json) {
  o.seed = effective_seed(o.seed);
  const auto cv = nv::composite_veronese(nvars, nv::parse_uint_list(degrees));
  const auto rels = nv::image_linear_relations(cv, o);
  if (as_json) {
    json j{{"nvars", nvars},
           {"degrees", cv.degrees()},
           {"coordinates", cv.coordinate_count()},
           {"dimension", rels.size()}};
    j["relations"] = json::array();
    for (const auto& r : rels) {
      std::vector<std::string> coeffs;
      for (const auto& c : r.coefficients) coeffs.push_back(c.get_str());
      j["relations"].push_back({{"form", r.to_string(cv)}, {"coefficients", coeffs}});
    }
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << "ambient P^" << cv.ambient_dim() << ", " << rels.size()
            << " independent linear relations\n";
  for (const auto& r : rels) std::cout << "  " << r.to_string(cv) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dimensions and identifiability of polynomial network varieties"};
  app.require_subcommand(1);

  DimsArgs dims;
  auto* dims_cmd = app.add_subcommand("dims", "Expected and sampled dimension");
  dims_cmd->add_option("-n,--widths", dims.widths, "Widths n0,...,nL")->required();
  dims_cmd->add_option("-d,--degrees", dims.degrees, "Activation degrees d1,...,d(L-1)");
  dims_cmd->add_option("--tries", dims.tries, "Random sample points")->capture_default_str();
  dims_cmd->add_option("--seed", dims.seed, "Seed (NV_SEED overrides)")->capture_default_str();
  add_domain_options(dims_cmd, dims.domain);
  dims_cmd->add_flag("--json", dims.json, "Print the JSON report");
  dims_cmd->add_option("--out", dims.out, "Write to a file instead of stdout");
  dims_cmd->add_flag("--confirm-rational", dims.confirm_rational,
                     "Recompute the witness rank over Q");
  dims_cmd->add_flag("--timing", dims.timing, "Record wall time");
  dims_cmd->add_flag("--blocks", dims.blocks, "Column-block ranks at the witness");

  std::string check_widths, check_degrees, check_out;
  bool check_json = false;
  auto* check_cmd = app.add_subcommand("check", "Theorem conditions and verdict");
  check_cmd->add_option("-n,--widths", check_widths, "Widths n0,...,nL")->required();
  check_cmd->add_option("-d,--degrees", check_degrees, "Activation degrees");
  check_cmd->add_flag("--json", check_json, "Print JSON");
  check_cmd->add_option("--out", check_out, "Write to a file instead of stdout");

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan", "Exhaustive scan over bounded architectures");
  scan_cmd->add_option("--min-depth", scan.spec.min_depth)->capture_default_str();
  scan_cmd->add_option("--max-depth", scan.spec.max_depth)->capture_default_str();
  scan_cmd->add_option("--min-input", scan.spec.min_input_width)->capture_default_str();
  scan_cmd->add_option("--max-width", scan.spec.max_width, "Bound on n0..n(L-1)")
      ->capture_default_str();
  scan_cmd->add_option("--max-output", scan.spec.max_output_width)->capture_default_str();
  scan_cmd->add_option("--max-degree", scan.spec.max_degree)->capture_default_str();
  scan_cmd->add_option("--max-free", scan.spec.max_free_weights)->capture_default_str();
  scan_cmd->add_option("--max-ambient", scan.spec.max_ambient)->capture_default_str();
  scan_cmd->add_option("--tries", scan.spec.tries)->capture_default_str();
  scan_cmd->add_option("--seed", scan.spec.seed)->capture_default_str();
  scan_cmd->add_option("--threads", scan.spec.threads, "0 = all cores (NV_THREADS caps)")
      ->capture_default_str();
  add_domain_options(scan_cmd, scan.domain);
  scan_cmd->add_option("--format", scan.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  scan_cmd->add_flag("--json", scan.json, "Same as --format json");
  scan_cmd->add_option("--out", scan.out, "Report path");
  scan_cmd->add_flag("--timing", scan.spec.timing, "Record wall time per row");

  SecantArgs sec;
  auto* sec_cmd = app.add_subcommand("veronese-secant", "Secant dimension of a Veronese");
  sec_cmd->add_option("-m,--nvars", sec.nvars, "Variables (P^{m-1})")->capture_default_str();
  sec_cmd->add_option("-e,--deg", sec.degree, "Veronese degree")->capture_default_str();
  sec_cmd->add_option("-s,--secant", sec.secant, "Number of points")->capture_default_str();
  sec_cmd->add_option("--tries", sec.tries)->capture_default_str();
  sec_cmd->add_option("--seed", sec.seed)->capture_default_str();
  sec_cmd->add_flag("--json", sec.json, "Print JSON");
  sec_cmd->add_flag("--table", sec.table, "Cross-check the whole classification grid");
  sec_cmd->add_flag("--slow", sec.slow, "Include the (4,4,9) case in --table");

  nv::PowerScanOptions power;
  bool power_json = false;
  auto* power_cmd = app.add_subcommand("power-indep", "Independence of powers of forms");
  power_cmd->add_option("-v,--vars", power.nvars, "Variables d")->capture_default_str();
  power_cmd->add_option("-k,--count", power.count, "Forms k")->capture_default_str();
  power_cmd->add_option("-s,--degree", power.degree, "Form degree s")->capture_default_str();
  power_cmd->add_option("--trials", power.trials)->capture_default_str();
  power_cmd->add_option("--seed", power.seed)->capture_default_str();
  power_cmd->add_flag("--minimal", power.find_minimal, "Also find the minimal r per instance");
  power_cmd->add_flag("--json", power_json, "Print JSON");

  unsigned rel_nvars = 2;
  std::string rel_degrees;
  nv::RelationOptions rel;
  bool rel_json = false;
  auto* rel_cmd = app.add_subcommand("relations", "Linear relations on a composite Veronese");
  rel_cmd->add_option("-m,--nvars", rel_nvars)->capture_default_str();
  rel_cmd->add_option("-d,--degrees", rel_degrees, "Degrees e1,...,em")->required();
  rel_cmd->add_option("--oversample", rel.oversample, "Evaluation points (0 = ambient + 10)");
  rel_cmd->add_option("--seed", rel.seed)->capture_default_str();
  rel_cmd->add_flag("--json", rel_json, "Print JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*dims_cmd) return run_dims(dims);
    if (*check_cmd) return run_check(check_widths, check_degrees, check_json, check_out);
    if (*scan_cmd) return run_scan(scan);
    if (*sec_cmd) return run_secant(sec);
    if (*power_cmd) return run_power(power, power_json);
    if (*rel_cmd) return run_relations(rel_nvars, rel_degrees, rel, rel_json);
  } catch (const nv::SamplingExhausted& e) {
    std::cerr << "sampling exhausted: " << e.what() << "\n";
    return kExhausted;
  } catch (const nv::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const nv::ArchitectureError& e) {
    std::cerr << "invalid architecture: " << e.what() << "\n";
    return kInvalid;
  } catch (const nv::PreconditionError& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return kInvalid;
  } catch (const nv::AmbientTooLarge& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return kInvalid;
  } catch (const nv::ProportionalPair& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return kInvalid;
  } catch (const nv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
