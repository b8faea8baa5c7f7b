#pragma once

// Dimension statistics of a neurovariety: expected dimensions next to the
// sampled Jacobian rank, with enough provenance to rerun the computation.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nv/architecture.hpp"
#include "nv/field.hpp"
#include "nv/jacobian.hpp"
#include "nv/network.hpp"

namespace nv {

struct StatsOptions {
  std::size_t tries = 10;
  std::uint64_t seed = 1;
  // Unset means a prime field with modulus choose_prime(seed).
  std::optional<Domain> domain;
  // Recompute the witness rank over Q at the witness point lifted to Z.
  bool confirm_rational = false;
  // Column-block ranks at the witness point.
  bool blocks = false;
  // Unset means GaugeMask::standard.
  std::optional<GaugeMask> gauge;
};

struct DimReport {
  Architecture arch;
  std::uint64_t free_weights = 0;
  std::uint64_t target_dim = 0;
  std::uint64_t expdim_general = 0;
  std::optional<std::uint64_t> expdim_refined;  // present iff n_L = 1 and L >= 2
  std::uint64_t dim_actual = 0;
  std::uint64_t fiber_dim = 0;
  bool defective = false;
  std::size_t trials = 0;  // trials actually run (sampling stops at full rank)
  std::size_t pivot_failures = 0;
  std::uint64_t seed = 0;
  Domain domain;
  std::size_t pivot = 0;
  std::vector<std::string> witness;  // free-weight values, free_weights order
  std::optional<std::size_t> rational_rank;
  std::optional<BlockRankReport> blocks;

  // Refined bound when defined, general otherwise.
  std::uint64_t applicable_expdim() const { return expdim_refined.value_or(expdim_general); }
};

// Throws SamplingExhausted from the rank sampler.
DimReport neurovariety_stats(const Architecture& arch, const StatsOptions& options = {});

// The domain a StatsOptions resolves to.
Domain resolve_domain(const StatsOptions& options);

}  // namespace nv
