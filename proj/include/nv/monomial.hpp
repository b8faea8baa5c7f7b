#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

namespace nv {

using Exponent = std::uint32_t;

// Exponent vector over a fixed, ordered variable set. Comparison is
// lexicographic on the exponent vector, so x0 > x1 > ... and x0^2 > x0*x1.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {}
  Monomial(std::initializer_list<Exponent> exps) : exps_(exps) {}

  std::size_t size() const noexcept { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  Exponent& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<Exponent>& exponents() const noexcept { return exps_; }

  std::uint64_t degree() const {
    return std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
  }
  bool is_constant() const {
    for (Exponent e : exps_)
      if (e != 0) return false;
    return true;
  }

  Monomial operator*(const Monomial& other) const {
    Monomial out(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] += other.exps_[i];
    return out;
  }

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

 private:
  std::vector<Exponent> exps_;
};

// All monomials of total degree deg in nvars variables, lex-descending
// (x0^deg first). There are binom(nvars - 1 + deg, nvars - 1) of them.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::uint64_t deg);

// Human readable form using the given variable names, e.g. "x0^2*x1".
std::string format_monomial(const Monomial& m, const std::vector<std::string>& names);

}  // namespace nv
