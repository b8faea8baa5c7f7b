#include "nv/stats.hpp"

#include "nv/theory.hpp"

namespace nv {

Domain resolve_domain(const StatsOptions& options) {
  return options.domain.value_or(Domain::prime_field(choose_prime(options.seed)));
}

DimReport neurovariety_stats(const Architecture& arch, const StatsOptions& options) {
  const GaugedMap map(arch, options.gauge.value_or(GaugeMask::standard(arch)));
  DimReport r{.arch = arch};
  r.free_weights = map.free_count();
  r.target_dim = map.target_dim();
  r.expdim_general = expected_dim_general(arch);
  if (arch.output_width() == 1 && arch.depth() >= 2)
    r.expdim_refined = expected_dim_single_output(arch);
  r.seed = options.seed;
  r.domain = resolve_domain(options);
  r.pivot = map.pivot(0);

  visit_domain(r.domain, [&](const auto& field) {
    const auto est = generic_rank(map, options.tries, options.seed, field);
    r.dim_actual = est.rank;
    r.trials = est.trials;
    r.pivot_failures = est.pivot_failures;
    for (const auto& v : est.witness.point) r.witness.push_back(field.to_string(v));
    if (options.blocks) r.blocks = block_ranks(est.witness.matrix, map, field);
    if (options.confirm_rational) {
      const Rationals q;
      std::vector<mpq_class> lifted;
      for (const auto& v : est.witness.point) lifted.push_back(field.to_rational(v));
      r.rational_rank = jacobian_at(map, std::move(lifted), q).rank;
    }
  });

  r.fiber_dim = r.free_weights - r.dim_actual;
  r.defective = r.dim_actual < r.applicable_expdim();
  return r;
}

}  // namespace nv
