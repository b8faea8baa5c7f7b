#include "nv/architecture.hpp"

#include <gmpxx.h>

#include <charconv>

#include "nv/errors.hpp"

namespace nv {

Architecture Architecture::validate(std::vector<unsigned> widths, std::vector<unsigned> degrees) {
  using Kind = ArchitectureError::Kind;
  if (widths.size() < 2)
    throw ArchitectureError(Kind::LengthMismatch, widths.size(),
                            "need at least two widths (L >= 1), got " +
                                std::to_string(widths.size()));
  if (degrees.size() != widths.size() - 2)
    throw ArchitectureError(Kind::LengthMismatch, degrees.size(),
                            "expected " + std::to_string(widths.size() - 2) +
                                " activation degrees, got " + std::to_string(degrees.size()));
  for (std::size_t i = 0; i < widths.size(); ++i)
    if (widths[i] == 0)
      throw ArchitectureError(Kind::WidthZero, i, "width n_" + std::to_string(i) + " is zero");
  for (std::size_t i = 0; i < degrees.size(); ++i)
    if (degrees[i] < 2)
      throw ArchitectureError(Kind::DegreeBelowTwo, i + 1,
                              "degree d_" + std::to_string(i + 1) + " = " +
                                  std::to_string(degrees[i]) + " is below 2");
  return Architecture(std::move(widths), std::move(degrees));
}

std::uint64_t Architecture::x_degree(std::size_t k) const {
  std::uint64_t d = 1;
  for (std::size_t t = 1; t < k; ++t) d *= degree(t);
  return d;
}

std::uint64_t Architecture::free_weight_count() const {
  std::uint64_t k = 0;
  for (std::size_t i = 1; i < widths_.size(); ++i)
    k += std::uint64_t{widths_[i]} * (widths_[i - 1] - 1);
  return k;
}

std::uint64_t Architecture::weight_count() const {
  std::uint64_t k = 0;
  for (std::size_t i = 1; i < widths_.size(); ++i) k += std::uint64_t{widths_[i]} * widths_[i - 1];
  return k;
}

std::uint64_t Architecture::coefficient_count() const {
  return binomial(input_width() - 1 + total_degree(), input_width() - 1);
}

std::uint64_t Architecture::affine_target_dim() const {
  return std::uint64_t{output_width()} * (coefficient_count() - 1);
}

std::string Architecture::to_string() const {
  auto join = [](const std::vector<unsigned>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
  };
  return join(widths_) + "," + join(degrees_);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  if (!r.fits_ulong_p())
    throw PreconditionError("binomial(" + std::to_string(n) + "," + std::to_string(k) +
                            ") exceeds 64 bits");
  return r.get_ui();
}

std::vector<unsigned> parse_uint_list(const std::string& text) {
  std::vector<unsigned> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    unsigned value = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + end;
    while (first < last && *first == ' ') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last)
      throw PreconditionError("not a list of non-negative integers: '" + text + "'");
    out.push_back(value);
    pos = end + 1;
    if (end + 1 == text.size()) throw PreconditionError("trailing comma in '" + text + "'");
  }
  return out;
}

}  // namespace nv
