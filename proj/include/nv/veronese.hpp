#pragma once

// Composite Veronese maps and their linear relations, secant dimensions
// through the two-layer network parameterization, and linear independence of
// powers of forms.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nv/field.hpp"
#include "nv/monomial.hpp"

namespace nv {

// One stage of nu_{e_m} o ... o nu_{e_1}: the degree-e monomials in the
// previous stage's coordinates.
struct VeroneseStage {
  unsigned degree = 0;
  std::size_t source_vars = 0;       // M_{t-1} + 1
  std::vector<Monomial> coordinates; // lex order, binom(source_vars - 1 + e, source_vars - 1)
};

class CompositeVeronese {
 public:
  static constexpr std::uint64_t kDefaultCap = 100000;

  // Throws PreconditionError for nvars < 2 or a degree < 2, AmbientTooLarge
  // when some stage has more than cap coordinates.
  CompositeVeronese(std::size_t nvars, std::vector<unsigned> degrees,
                    std::uint64_t cap = kDefaultCap);

  std::size_t input_vars() const noexcept { return nvars_; }
  const std::vector<unsigned>& degrees() const noexcept { return degrees_; }
  const std::vector<VeroneseStage>& stages() const noexcept { return stages_; }
  // Number of final coordinates (projective ambient dimension + 1).
  std::size_t coordinate_count() const { return stages_.back().coordinates.size(); }
  std::size_t ambient_dim() const { return coordinate_count() - 1; }

  // Final coordinates at a source point.
  std::vector<mpq_class> evaluate(const std::vector<mpq_class>& point) const;
  // Final coordinates as monomials in the input variables.
  std::vector<Monomial> input_expansion() const;
  // "z0*z2" style name of final coordinate i in the previous stage's
  // variables (x's for a single stage).
  std::string coordinate_name(std::size_t i) const;

 private:
  std::size_t nvars_;
  std::vector<unsigned> degrees_;
  std::vector<VeroneseStage> stages_;
};

CompositeVeronese composite_veronese(std::size_t nvars, std::vector<unsigned> degrees,
                                     std::uint64_t cap = CompositeVeronese::kDefaultCap);

// A linear form sum_i coefficients[i] * coordinate_i, primitive over Z with
// positive leading coefficient.
struct LinearRelation {
  std::vector<mpz_class> coefficients;
  std::string to_string(const CompositeVeronese& cv) const;
};

struct RelationOptions {
  // Evaluation rows; 0 means ambient_dim() + 10.
  std::size_t oversample = 0;
  std::uint64_t seed = 1;
  std::size_t verify_points = 50;
};

// Basis of the linear forms vanishing on the image. Throws PreconditionError
// if oversample <= ambient_dim().
std::vector<LinearRelation> image_linear_relations(const CompositeVeronese& cv,
                                                   const RelationOptions& options = {});

// Projective dimension of the s-th secant of the degree-deg Veronese of
// P^{nvars-1}, as the generic rank of the network (nvars, s, 1), (deg).
std::size_t empirical_secant_dim(unsigned nvars, unsigned deg, unsigned s, std::size_t tries = 10,
                                 std::uint64_t seed = 1);

// min(s * nvars, binom(nvars - 1 + deg, nvars - 1)) - 1.
std::uint64_t expected_secant_dim(unsigned nvars, unsigned deg, unsigned s);

// Forms p_1..p_k of common degree s in d variables; coefficient vectors over
// monomials_of_degree(d, s).
struct PowerInstance {
  std::size_t nvars = 0;
  unsigned degree = 0;
  std::vector<std::vector<mpq_class>> forms;
  unsigned exponent = 1;  // r
};

struct PowerResult {
  bool independent = false;
  std::size_t rank = 0;
};

// Rank of the coefficient matrix of p_1^r..p_k^r. Throws ProportionalPair
// when two forms are proportional (a zero form counts as proportional to
// everything).
PowerResult power_independence(const PowerInstance& inst);

// First proportional pair (i < j), if any.
std::optional<std::pair<std::size_t, std::size_t>> find_proportional_pair(
    const std::vector<std::vector<mpq_class>>& forms);

// Random pairwise non-proportional forms with integer coefficients in
// [-999, 999].
std::vector<std::vector<mpq_class>> random_forms(std::size_t nvars, unsigned degree,
                                                 std::size_t count, std::uint64_t seed,
                                                 std::uint64_t stream);

struct PowerScanOptions {
  std::size_t nvars = 2;   // d
  std::size_t count = 2;   // k
  unsigned degree = 1;     // s
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  bool find_minimal = false;
};

struct PowerScanReport {
  PowerScanOptions options;
  std::size_t threshold = 0;              // r = k - 1
  std::size_t independent_at_threshold = 0;
  std::vector<std::size_t> minimal_r;     // per trial, when find_minimal
  std::size_t monotonicity_violations = 0;
};

// Throws PreconditionError when k < 2 or trials == 0.
PowerScanReport power_threshold_scan(const PowerScanOptions& options);

}  // namespace nv
