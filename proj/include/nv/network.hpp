#pragma once

// Symbolic forward pass of a polynomial network, its coefficient map and
// the affine gauge used for rank sampling.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "nv/architecture.hpp"
#include "nv/field.hpp"
#include "nv/sparse_poly.hpp"

namespace nv {

// Entry (row, col) of W_layer; layer is 1-based, row and col 0-based.
struct WeightIndex {
  unsigned layer = 1;
  unsigned row = 0;
  unsigned col = 0;

  std::string name() const;  // "w{layer}_{row}_{col}"
  auto operator<=>(const WeightIndex&) const = default;
};

// Marks weight entries fixed to the constant 1.
class GaugeMask {
 public:
  // The last column of every W_i fixed to 1.
  static GaugeMask standard(const Architecture& arch);
  // Exactly the listed entries fixed to 1.
  static GaugeMask fixing(const Architecture& arch, const std::vector<WeightIndex>& fixed);

  bool is_fixed(const WeightIndex& w) const {
    return fixed_.at(w.layer - 1).at(std::size_t{w.row} * cols_.at(w.layer - 1) + w.col);
  }
  bool operator==(const GaugeMask&) const = default;

 private:
  std::vector<std::vector<bool>> fixed_;
  std::vector<unsigned> cols_;
};

// All weights of arch in (layer, row, col) order.
std::vector<WeightIndex> all_weights(const Architecture& arch);

// Ring over Q with variables x0..x{n0-1} followed by every weight w{l}_{r}_{c}.
class NetworkRing {
 public:
  explicit NetworkRing(const Architecture& arch);

  const RingPtr<Rationals>& ring() const noexcept { return ring_; }
  unsigned input_count() const noexcept { return inputs_; }
  std::size_t weight_var(const WeightIndex& w) const;
  bool is_input(std::size_t var) const noexcept { return var < inputs_; }
  // Layer owning variable var (0 for inputs).
  unsigned layer_of(std::size_t var) const { return var_layer_.at(var); }

 private:
  RingPtr<Rationals> ring_;
  unsigned inputs_;
  std::vector<std::size_t> layer_offset_;
  std::vector<unsigned> layer_cols_;
  std::vector<unsigned> var_layer_;
};

template <class Field>
using PolyMatrix = std::vector<std::vector<SparsePoly<Field>>>;

// Per-layer weight matrices W_1..W_L whose entries are polynomials (symbols
// or constants) over a common ring.
template <class Field>
struct WeightAssignment {
  std::vector<PolyMatrix<Field>> layers;
};

// Weight matrices with a fresh symbol per entry, except gauge-fixed entries
// which are the constant 1.
WeightAssignment<Rationals> symbolic_weights(const NetworkRing& net, const Architecture& arch,
                                             const GaugeMask* gauge = nullptr);

// F_{k,j} for k = 1..L (layers[k-1][j]).
template <class Field>
struct LayerPolynomials {
  std::vector<std::vector<SparsePoly<Field>>> layers;
  const std::vector<SparsePoly<Field>>& outputs() const { return layers.back(); }
};

// F_1 = W_1 x and F_k = W_k (F_{k-1})^{d_{k-1}}. inputs are x_0..x_{n0-1}.
template <class Field>
LayerPolynomials<Field> forward_layers(const Architecture& arch,
                                       const std::vector<SparsePoly<Field>>& inputs,
                                       const WeightAssignment<Field>& weights) {
  if (weights.layers.size() != arch.depth())
    throw PreconditionError("weight assignment has wrong number of layers");
  if (inputs.size() != arch.input_width())
    throw PreconditionError("wrong number of input polynomials");
  LayerPolynomials<Field> out;
  std::vector<SparsePoly<Field>> activated = inputs;
  for (std::size_t k = 1; k <= arch.depth(); ++k) {
    const auto& w = weights.layers[k - 1];
    if (w.size() != arch.width(k))
      throw PreconditionError("W_" + std::to_string(k) + " has wrong row count");
    std::vector<SparsePoly<Field>> layer;
    layer.reserve(w.size());
    for (const auto& row : w) {
      if (row.size() != arch.width(k - 1))
        throw PreconditionError("W_" + std::to_string(k) + " has wrong column count");
      SparsePoly<Field> acc(inputs.front().ring());
      for (std::size_t i = 0; i < row.size(); ++i) acc += row[i] * activated[i];
      layer.push_back(std::move(acc));
    }
    if (k < arch.depth()) {
      activated.clear();
      for (const auto& f : layer) activated.push_back(poly_pow(f, arch.degree(k)));
    }
    out.layers.push_back(std::move(layer));
  }
  return out;
}

// Input variables x_0..x_{n0-1} of net as polynomials.
std::vector<SparsePoly<Rationals>> input_polys(const NetworkRing& net);

// Coefficients of the x-monomials of degree deg (lex order) in f, as
// polynomials in the remaining variables. The first n_inputs variables are
// the x's.
template <class Field>
std::vector<SparsePoly<Field>> extract_coefficients(const SparsePoly<Field>& f,
                                                    std::size_t n_inputs, std::uint64_t deg) {
  const auto basis = monomials_of_degree(n_inputs, deg);
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
  std::vector<SparsePoly<Field>> out(basis.size(), SparsePoly<Field>(f.ring()));
  for (const auto& [m, c] : f.terms()) {
    Monomial xpart(std::vector<Exponent>(m.exponents().begin(),
                                         m.exponents().begin() + n_inputs));
    auto it = index.find(xpart);
    if (it == index.end()) throw PreconditionError("polynomial is not homogeneous of the given x-degree");
    Monomial rest = m;
    for (std::size_t i = 0; i < n_inputs; ++i) rest[i] = 0;
    out[it->second].add_term(rest, c);
  }
  return out;
}

// The coefficient map phi: for each output l, the s_{F_l, j} in lex order of
// the x-monomials of degree D, as polynomials in the weight variables.
struct CoefficientMap {
  Architecture arch;
  std::shared_ptr<const NetworkRing> net;
  std::vector<std::vector<SparsePoly<Rationals>>> outputs;
};

CoefficientMap coefficient_map(const Architecture& arch);
// Same as coefficient_map, built once per architecture and shared.
std::shared_ptr<const CoefficientMap> cached_coefficient_map(const Architecture& arch);

// A dehomogenized coordinate numerator / denominator of the gauged map.
struct RationalCoordinate {
  std::size_t output = 0;
  std::size_t monomial = 0;
  SparsePoly<Rationals> numerator;
  SparsePoly<Rationals> denominator;
};

// The affine map phi_A: free weights -> A^{n_L (m - 1)}, where each output is
// divided by its pivot coefficient (the x_0^D coefficient).
class GaugedMap {
 public:
  GaugedMap(Architecture arch, GaugeMask gauge);

  const Architecture& arch() const noexcept { return arch_; }
  const GaugeMask& gauge() const noexcept { return gauge_; }
  const std::vector<WeightIndex>& free_weights() const noexcept { return free_; }
  std::size_t free_count() const noexcept { return free_.size(); }
  // Monomial index used as denominator for output l.
  std::size_t pivot(std::size_t /*output*/) const noexcept { return 0; }
  std::vector<std::size_t> pivots() const;
  std::size_t coordinates_per_output() const { return arch_.coefficient_count() - 1; }
  std::size_t target_dim() const { return arch_.output_width() * coordinates_per_output(); }

  // Symbolic coordinate functions, row order of the Jacobian. Only
  // practical for small architectures.
  std::vector<RationalCoordinate> symbolic_coordinates() const;

 private:
  Architecture arch_;
  GaugeMask gauge_;
  std::vector<WeightIndex> free_;
};

GaugedMap gauge_fix(const Architecture& arch);

}  // namespace nv
