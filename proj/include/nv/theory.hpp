#pragma once

// Closed-form predicates: expected dimensions, the room condition, the
// Alexander-Hirschowitz list of defective Veronese secants, and the verdicts
// of the non-defectiveness / identifiability theorems.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nv/architecture.hpp"

namespace nv {

// min(sum_i n_i (n_{i-1} - 1), n_L * binom(n_0 - 1 + D, n_0 - 1) - n_L).
std::uint64_t expected_dim_general(const Architecture& arch);

// Refined bound for n_L = 1, L >= 2: the general bound with the extra term
// sum_{i<=L-2} n_i (n_{i-1} - 1) + binom(n_{L-2} - 1 + d_{L-1}, n_{L-2} - 1).
// Throws NotSingleOutput when n_L != 1, PreconditionError when L < 2.
std::uint64_t expected_dim_single_output(const Architecture& arch);

// The applicable bound: refined when n_L = 1 and L >= 2, general otherwise.
std::uint64_t expected_dim(const Architecture& arch);

struct RoomRecord {
  std::size_t layer = 0;   // i
  std::uint64_t lhs = 0;   // n_{i-1} + n_i - 1
  std::uint64_t rhs = 0;   // binom(n_{i-1} - 1 + d_i, n_{i-1} - 1)
  bool holds = false;      // lhs < rhs
};

struct RoomCheck {
  std::vector<RoomRecord> records;  // i = 1..L-1

  bool holds() const;
  // First layer where the strict inequality fails.
  std::optional<std::size_t> first_failure() const;
};

RoomCheck room_condition(const Architecture& arch);

// True iff Sec_s of the degree-deg Veronese of P^{nvars-1} is defective.
bool ah_secant_defective(unsigned nvars, unsigned deg, unsigned s);

enum class VerdictKind {
  PredictedNonDefective,
  PredictedIdentifiable,
  RoomFails,
  LastVeroneseDefective,
  FillingCaseUnresolved,
  Inconclusive,
};

struct AhLookup {
  unsigned nvars = 0;  // n_{L-2}
  unsigned degree = 0; // d_{L-1}
  unsigned secant = 0; // n_{L-1}
  bool defective = false;
};

// Third identifiability condition for n_L >= 2.
struct FillingCheck {
  std::uint64_t single_output_expdim = 0;  // refined expdim of (n_0..n_{L-1}, 1)
  std::uint64_t parameter_count = 0;       // its sum n_i (n_{i-1} - 1)
  bool holds = false;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::optional<std::size_t> failing_layer;  // set for RoomFails
  RoomCheck room;
  std::optional<AhLookup> ah;                // absent when n_{L-2} = 1
  std::optional<FillingCheck> filling;       // only for n_L >= 2

  // Whether the verdict asserts non-defectiveness.
  bool predicts_nondefective() const {
    return kind == VerdictKind::PredictedNonDefective ||
           kind == VerdictKind::PredictedIdentifiable;
  }
  // "RoomFails(1)", "PredictedIdentifiable", ...
  std::string to_string() const;
};

// Requires L >= 2.
Verdict theorem_verdict(const Architecture& arch);

std::string to_string(VerdictKind kind);

}  // namespace nv
