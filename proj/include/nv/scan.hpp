#pragma once

// Exhaustive scan over a bounded family of architectures, comparing the
// theorem verdicts with sampled dimensions.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nv/report.hpp"
#include "nv/stats.hpp"
#include "nv/theory.hpp"

namespace nv {

struct ScanSpec {
  unsigned min_depth = 2;
  unsigned max_depth = 3;
  unsigned min_input_width = 2;
  unsigned max_width = 4;         // bound on n_0..n_{L-1}
  unsigned max_output_width = 2;  // bound on n_L
  unsigned max_degree = 4;
  std::uint64_t max_free_weights = 64;
  std::uint64_t max_ambient = 20000;  // affine target coordinates
  std::size_t tries = 10;
  std::uint64_t seed = 1;
  std::optional<Domain> domain;  // unset: prime field from the seed
  std::size_t threads = 0;       // 0: hardware concurrency
  bool timing = false;           // record wall_ms per row

  // Throws PreconditionError when a bound is below its legal minimum.
  void validate() const;
};

// Single-output architectures with L >= 2 whose free-weight count does not
// exceed the affine target dimension.
bool in_necessity_scope(const Architecture& arch);

struct ScanRow {
  Architecture arch;
  std::optional<DimReport> report;  // absent when sampling failed
  std::optional<Verdict> verdict;   // absent for L = 1
  std::string error;
  std::uint64_t seed = 0;
  Domain domain;
  bool necessity_scope = false;
  // False when a non-defective verdict meets a defective sample, or a failed
  // condition in necessity scope meets a non-defective sample.
  bool agreement = true;
  std::uint64_t wall_ms = 0;
};

// Architectures of the grid passing the pre-filters, sorted.
std::vector<Architecture> scan_grid(const ScanSpec& spec);

// Rows sorted by (L, widths, degrees); identical for any thread count.
std::vector<ScanRow> scan(const ScanSpec& spec);

ReportRecord make_record(const ScanRow& row);

// Worker count: NV_THREADS caps `requested` (0 means hardware concurrency).
std::size_t worker_count(std::size_t requested);

}  // namespace nv
