#include "nv/forms.hpp"

#include <map>

namespace nv {

ProductTable::ProductTable(std::size_t nvars, std::uint64_t left_degree,
                           std::uint64_t right_degree) {
  const auto left = monomials_of_degree(nvars, left_degree);
  const auto right = monomials_of_degree(nvars, right_degree);
  const auto result = monomials_of_degree(nvars, left_degree + right_degree);
  std::map<Monomial, std::uint32_t> position;
  for (std::size_t i = 0; i < result.size(); ++i)
    position.emplace(result[i], static_cast<std::uint32_t>(i));
  left_ = left.size();
  right_ = right.size();
  result_ = result.size();
  index_.resize(left_ * right_);
  for (std::size_t i = 0; i < left_; ++i)
    for (std::size_t j = 0; j < right_; ++j) index_[i * right_ + j] = position.at(left[i] * right[j]);
}

}  // namespace nv
