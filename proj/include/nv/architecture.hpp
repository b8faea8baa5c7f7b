#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace nv {

// Widths n_0..n_L and activation degrees d_1..d_{L-1} of a polynomial
// network. Only constructible through validate(), so every instance satisfies
// len(degrees) == len(widths) - 2, n_i >= 1 and d_i >= 2.
class Architecture {
 public:
  static Architecture validate(std::vector<unsigned> widths, std::vector<unsigned> degrees);

  const std::vector<unsigned>& widths() const noexcept { return widths_; }
  const std::vector<unsigned>& degrees() const noexcept { return degrees_; }

  // Number of weight layers L.
  std::size_t depth() const noexcept { return widths_.size() - 1; }
  unsigned width(std::size_t i) const { return widths_.at(i); }
  // Activation degree d_i for 1 <= i <= L-1.
  unsigned degree(std::size_t i) const { return degrees_.at(i - 1); }
  unsigned input_width() const noexcept { return widths_.front(); }
  unsigned output_width() const noexcept { return widths_.back(); }

  // D = d_1 * ... * d_{L-1}.
  std::uint64_t total_degree() const { return x_degree(depth()); }
  // x-degree of the layer-k polynomials F_{k,*}: prod_{t<k} d_t.
  std::uint64_t x_degree(std::size_t k) const;

  // sum_i n_i (n_{i-1} - 1): weights left free by the standard gauge.
  std::uint64_t free_weight_count() const;
  // binom(n_0 - 1 + D, n_0 - 1): monomials of degree D in n_0 variables.
  std::uint64_t coefficient_count() const;
  // n_L * (coefficient_count() - 1).
  std::uint64_t affine_target_dim() const;
  std::uint64_t weight_count() const;

  // "(2,3,2,1),(4,3)"
  std::string to_string() const;

  auto operator<=>(const Architecture& o) const {
    if (auto c = depth() <=> o.depth(); c != 0) return c;
    if (auto c = widths_ <=> o.widths_; c != 0) return c;
    return degrees_ <=> o.degrees_;
  }
  bool operator==(const Architecture&) const = default;

 private:
  Architecture(std::vector<unsigned> widths, std::vector<unsigned> degrees)
      : widths_(std::move(widths)), degrees_(std::move(degrees)) {}

  std::vector<unsigned> widths_;
  std::vector<unsigned> degrees_;
};

// Exact binomial coefficient; throws PreconditionError if it exceeds 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// Parses "2,3,2,1" (empty string gives an empty list).
std::vector<unsigned> parse_uint_list(const std::string& text);

}  // namespace nv
