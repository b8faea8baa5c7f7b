#pragma once

// Dense homogeneous forms in a fixed number of variables, stored as
// coefficient vectors over the lex-ordered monomial basis of their degree.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nv/monomial.hpp"

namespace nv {

// Index of m * m' in the degree (a + b) basis, for m of degree a and m' of
// degree b.
class ProductTable {
 public:
  ProductTable(std::size_t nvars, std::uint64_t left_degree, std::uint64_t right_degree);

  std::size_t left_size() const noexcept { return left_; }
  std::size_t right_size() const noexcept { return right_; }
  std::size_t result_size() const noexcept { return result_; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return index_[i * right_ + j]; }

 private:
  std::size_t left_ = 0;
  std::size_t right_ = 0;
  std::size_t result_ = 0;
  std::vector<std::uint32_t> index_;
};

// out += a * b.
template <class Field>
void multiply_add(const Field& f, const ProductTable& table,
                  std::span<const typename Field::Element> a,
                  std::span<const typename Field::Element> b,
                  std::span<typename Field::Element> out) {
  for (std::size_t i = 0; i < table.left_size(); ++i) {
    if (f.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < table.right_size(); ++j) {
      if (f.is_zero(b[j])) continue;
      auto& slot = out[table.at(i, j)];
      slot = f.add(slot, f.mul(a[i], b[j]));
    }
  }
}

}  // namespace nv
