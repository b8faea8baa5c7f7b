#include "nv/theory.hpp"

#include <algorithm>

#include "nv/errors.hpp"

namespace nv {

namespace {

std::uint64_t parameter_sum(const Architecture& arch, std::size_t upto) {
  std::uint64_t k = 0;
  for (std::size_t i = 1; i <= upto; ++i)
    k += std::uint64_t{arch.width(i)} * (arch.width(i - 1) - 1);
  return k;
}

}  // namespace

std::uint64_t expected_dim_general(const Architecture& arch) {
  return std::min(arch.free_weight_count(), arch.affine_target_dim());
}

std::uint64_t expected_dim_single_output(const Architecture& arch) {
  if (arch.output_width() != 1)
    throw NotSingleOutput("refined expected dimension is defined for n_L = 1 only, got " +
                          arch.to_string());
  const std::size_t L = arch.depth();
  if (L < 2) throw PreconditionError("refined expected dimension needs L >= 2");
  const unsigned last_hidden = arch.width(L - 2);
  const std::uint64_t span_term =
      parameter_sum(arch, L - 2) + binomial(last_hidden - 1 + arch.degree(L - 1), last_hidden - 1);
  return std::min({arch.free_weight_count(), span_term, arch.affine_target_dim()});
}

std::uint64_t expected_dim(const Architecture& arch) {
  if (arch.output_width() == 1 && arch.depth() >= 2) return expected_dim_single_output(arch);
  return expected_dim_general(arch);
}

bool RoomCheck::holds() const {
  return std::all_of(records.begin(), records.end(), [](const RoomRecord& r) { return r.holds; });
}

std::optional<std::size_t> RoomCheck::first_failure() const {
  for (const auto& r : records)
    if (!r.holds) return r.layer;
  return std::nullopt;
}

RoomCheck room_condition(const Architecture& arch) {
  RoomCheck check;
  for (std::size_t i = 1; i < arch.depth(); ++i) {
    RoomRecord r;
    r.layer = i;
    r.lhs = std::uint64_t{arch.width(i - 1)} + arch.width(i) - 1;
    r.rhs = binomial(arch.width(i - 1) - 1 + arch.degree(i), arch.width(i - 1) - 1);
    r.holds = r.lhs < r.rhs;
    check.records.push_back(r);
  }
  return check;
}

bool ah_secant_defective(unsigned nvars, unsigned deg, unsigned s) {
  if (deg == 2) return nvars >= 3 && s >= 2 && s <= nvars - 1;
  return (nvars == 3 && deg == 4 && s == 5) || (nvars == 4 && deg == 4 && s == 9) ||
         (nvars == 5 && deg == 3 && s == 8);
}

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::PredictedNonDefective: return "PredictedNonDefective";
    case VerdictKind::PredictedIdentifiable: return "PredictedIdentifiable";
    case VerdictKind::RoomFails: return "RoomFails";
    case VerdictKind::LastVeroneseDefective: return "LastVeroneseDefective";
    case VerdictKind::FillingCaseUnresolved: return "FillingCaseUnresolved";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::string Verdict::to_string() const {
  std::string s = nv::to_string(kind);
  if (kind == VerdictKind::RoomFails && failing_layer)
    s += "(" + std::to_string(*failing_layer) + ")";
  return s;
}

Verdict theorem_verdict(const Architecture& arch) {
  const std::size_t L = arch.depth();
  if (L < 2) throw PreconditionError("theorem verdicts need L >= 2");
  Verdict v;
  v.room = room_condition(arch);

  const unsigned nvars = arch.width(L - 2);
  if (nvars >= 2) {
    AhLookup ah{nvars, arch.degree(L - 1), arch.width(L - 1), false};
    ah.defective = ah_secant_defective(ah.nvars, ah.degree, ah.secant);
    v.ah = ah;
  }

  if (arch.output_width() >= 2) {
    std::vector<unsigned> widths = arch.widths();
    widths.back() = 1;
    const auto single = Architecture::validate(widths, arch.degrees());
    FillingCheck fc;
    fc.single_output_expdim = expected_dim_single_output(single);
    fc.parameter_count = single.free_weight_count();
    fc.holds = fc.single_output_expdim == fc.parameter_count;
    v.filling = fc;
  }

  if (auto failure = v.room.first_failure()) {
    v.kind = VerdictKind::RoomFails;
    v.failing_layer = failure;
    return v;
  }
  // The room condition at layer L-1 forces n_{L-2} >= 2, so the table lookup
  // exists here; guard anyway rather than read an empty optional.
  if (!v.ah) {
    v.kind = VerdictKind::Inconclusive;
    return v;
  }
  if (v.ah->defective) {
    v.kind = VerdictKind::LastVeroneseDefective;
    return v;
  }
  if (!v.filling) {
    v.kind = VerdictKind::PredictedNonDefective;
    return v;
  }
  v.kind = v.filling->holds ? VerdictKind::PredictedIdentifiable
                            : VerdictKind::FillingCaseUnresolved;
  return v;
}

}  // namespace nv
