#include "nv/scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <thread>

#include "nv/errors.hpp"

namespace nv {

void ScanSpec::validate() const {
  if (min_depth < 1) throw PreconditionError("scan depth must be at least 1");
  if (min_input_width < 1 || max_width < 1 || max_output_width < 1)
    throw PreconditionError("scan widths must be at least 1");
  if (max_degree < 2) throw PreconditionError("scan degrees must allow at least 2");
  if (tries < 1) throw PreconditionError("scan needs tries >= 1");
}

bool in_necessity_scope(const Architecture& arch) {
  return arch.depth() >= 2 && arch.output_width() == 1 &&
         arch.free_weight_count() <= arch.affine_target_dim();
}

namespace {

bool passes_filters(const Architecture& arch, const ScanSpec& spec) {
  try {
    return arch.free_weight_count() <= spec.max_free_weights &&
           arch.affine_target_dim() <= spec.max_ambient;
  } catch (const PreconditionError&) {
    return false;  // binomial beyond 64 bits
  }
}

// Calls f with every vector v, lo <= v[i] <= hi[i].
void for_each_vector(std::vector<unsigned> lo, const std::vector<unsigned>& hi,
                     const std::function<void(const std::vector<unsigned>&)>& f) {
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i]) return;
  std::vector<unsigned> v = lo;
  while (true) {
    f(v);
    std::size_t i = v.size();
    while (i > 0) {
      --i;
      if (v[i] < hi[i]) {
        ++v[i];
        break;
      }
      v[i] = lo[i];
      if (i == 0) return;
    }
    if (v.empty()) return;
  }
}

}  // namespace

std::vector<Architecture> scan_grid(const ScanSpec& spec) {
  spec.validate();
  std::vector<Architecture> out;
  for (unsigned L = spec.min_depth; L <= spec.max_depth; ++L) {
    std::vector<unsigned> wlo(L + 1, 1), whi(L + 1, spec.max_width);
    wlo[0] = spec.min_input_width;
    whi[L] = spec.max_output_width;
    std::vector<unsigned> dlo(L - 1, 2), dhi(L - 1, spec.max_degree);
    for_each_vector(wlo, whi, [&](const std::vector<unsigned>& widths) {
      for_each_vector(dlo, dhi, [&](const std::vector<unsigned>& degrees) {
        auto arch = Architecture::validate(widths, degrees);
        if (passes_filters(arch, spec)) out.push_back(std::move(arch));
      });
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t worker_count(std::size_t requested) {
  std::size_t n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("NV_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min<std::size_t>(n, cap);
  }
  return std::max<std::size_t>(n, 1);
}

namespace {

ScanRow scan_one(const Architecture& arch, const ScanSpec& spec) {
  const auto t0 = std::chrono::steady_clock::now();
  ScanRow row{.arch = arch};
  row.necessity_scope = in_necessity_scope(arch);
  row.seed = spec.seed;
  if (arch.depth() >= 2) row.verdict = theorem_verdict(arch);
  try {
    StatsOptions options;
    options.tries = spec.tries;
    options.seed = spec.seed;
    options.domain = spec.domain;
    row.domain = resolve_domain(options);
    row.report = neurovariety_stats(arch, options);
  } catch (const Error& e) {
    row.error = e.what();
  }
  if (row.report && row.verdict) {
    const bool defective = row.report->defective;
    const auto kind = row.verdict->kind;
    if (row.verdict->predicts_nondefective() && defective) row.agreement = false;
    if (row.necessity_scope && !defective &&
        (kind == VerdictKind::RoomFails || kind == VerdictKind::LastVeroneseDefective))
      row.agreement = false;
  }
  if (spec.timing)
    row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  return row;
}

}  // namespace

std::vector<ScanRow> scan(const ScanSpec& spec) {
  const auto grid = scan_grid(spec);
  std::vector<std::optional<ScanRow>> slots(grid.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) slots[i] = scan_one(grid[i], spec);
  };
  const std::size_t workers = std::min(worker_count(spec.threads), std::max<std::size_t>(grid.size(), 1));
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();
  std::vector<ScanRow> rows;
  rows.reserve(grid.size());
  for (auto& s : slots) rows.push_back(std::move(*s));
  return rows;
}

ReportRecord make_record(const ScanRow& row) {
  if (row.report) return make_record(*row.report, row.verdict, row.wall_ms);
  ReportRecord r;
  r.arch = row.arch.widths();
  r.degrees = row.arch.degrees();
  r.expdim = expected_dim_general(row.arch);
  if (row.arch.output_width() == 1 && row.arch.depth() >= 2)
    r.expdim_refined = expected_dim_single_output(row.arch);
  if (row.verdict) r.verdict = row.verdict->to_string();
  r.seed = row.seed;
  r.domain = row.domain.name();
  if (row.domain.kind == Domain::Kind::Prime) r.prime = std::to_string(row.domain.prime);
  r.wall_ms = row.wall_ms;
  return r;
}

}  // namespace nv
