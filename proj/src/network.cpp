#include "nv/network.hpp"

#include <map>
#include <mutex>

namespace nv {

std::string WeightIndex::name() const {
  return "w" + std::to_string(layer) + "_" + std::to_string(row) + "_" + std::to_string(col);
}

GaugeMask GaugeMask::standard(const Architecture& arch) {
  std::vector<WeightIndex> fixed;
  for (unsigned l = 1; l <= arch.depth(); ++l)
    for (unsigned r = 0; r < arch.width(l); ++r) fixed.push_back({l, r, arch.width(l - 1) - 1});
  return fixing(arch, fixed);
}

GaugeMask GaugeMask::fixing(const Architecture& arch, const std::vector<WeightIndex>& fixed) {
  GaugeMask g;
  for (unsigned l = 1; l <= arch.depth(); ++l) {
    g.cols_.push_back(arch.width(l - 1));
    g.fixed_.emplace_back(std::size_t{arch.width(l)} * arch.width(l - 1), false);
  }
  for (const auto& w : fixed) {
    if (w.layer < 1 || w.layer > arch.depth() || w.row >= arch.width(w.layer) ||
        w.col >= arch.width(w.layer - 1))
      throw PreconditionError("gauge entry " + w.name() + " outside the architecture");
    g.fixed_[w.layer - 1][std::size_t{w.row} * g.cols_[w.layer - 1] + w.col] = true;
  }
  return g;
}

std::vector<WeightIndex> all_weights(const Architecture& arch) {
  std::vector<WeightIndex> out;
  for (unsigned l = 1; l <= arch.depth(); ++l)
    for (unsigned r = 0; r < arch.width(l); ++r)
      for (unsigned c = 0; c < arch.width(l - 1); ++c) out.push_back({l, r, c});
  return out;
}

NetworkRing::NetworkRing(const Architecture& arch) : inputs_(arch.input_width()) {
  std::vector<std::string> names;
  for (unsigned i = 0; i < inputs_; ++i) {
    names.push_back("x" + std::to_string(i));
    var_layer_.push_back(0);
  }
  for (unsigned l = 1; l <= arch.depth(); ++l) {
    layer_offset_.push_back(names.size());
    layer_cols_.push_back(arch.width(l - 1));
    for (unsigned r = 0; r < arch.width(l); ++r)
      for (unsigned c = 0; c < arch.width(l - 1); ++c) {
        names.push_back(WeightIndex{l, r, c}.name());
        var_layer_.push_back(l);
      }
  }
  ring_ = make_ring(Rationals{}, std::move(names));
}

std::size_t NetworkRing::weight_var(const WeightIndex& w) const {
  return layer_offset_.at(w.layer - 1) + std::size_t{w.row} * layer_cols_.at(w.layer - 1) + w.col;
}

WeightAssignment<Rationals> symbolic_weights(const NetworkRing& net, const Architecture& arch,
                                             const GaugeMask* gauge) {
  WeightAssignment<Rationals> out;
  const auto& ring = net.ring();
  for (unsigned l = 1; l <= arch.depth(); ++l) {
    PolyMatrix<Rationals> w;
    for (unsigned r = 0; r < arch.width(l); ++r) {
      std::vector<SparsePoly<Rationals>> row;
      for (unsigned c = 0; c < arch.width(l - 1); ++c) {
        WeightIndex idx{l, r, c};
        if (gauge != nullptr && gauge->is_fixed(idx))
          row.push_back(SparsePoly<Rationals>::constant(ring, mpq_class(1)));
        else
          row.push_back(SparsePoly<Rationals>::variable(ring, net.weight_var(idx)));
      }
      w.push_back(std::move(row));
    }
    out.layers.push_back(std::move(w));
  }
  return out;
}

std::vector<SparsePoly<Rationals>> input_polys(const NetworkRing& net) {
  std::vector<SparsePoly<Rationals>> xs;
  for (unsigned i = 0; i < net.input_count(); ++i)
    xs.push_back(SparsePoly<Rationals>::variable(net.ring(), i));
  return xs;
}

CoefficientMap coefficient_map(const Architecture& arch) {
  auto net = std::make_shared<const NetworkRing>(arch);
  auto layers = forward_layers(arch, input_polys(*net), symbolic_weights(*net, arch));
  CoefficientMap map{arch, net, {}};
  for (const auto& f : layers.outputs())
    map.outputs.push_back(extract_coefficients(f, arch.input_width(), arch.total_degree()));
  return map;
}

std::shared_ptr<const CoefficientMap> cached_coefficient_map(const Architecture& arch) {
  static std::mutex mutex;
  static std::map<Architecture, std::shared_ptr<const CoefficientMap>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(arch); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const CoefficientMap>(coefficient_map(arch));
  std::lock_guard lock(mutex);
  return cache.try_emplace(arch, std::move(built)).first->second;
}

GaugedMap::GaugedMap(Architecture arch, GaugeMask gauge)
    : arch_(std::move(arch)), gauge_(std::move(gauge)) {
  for (const auto& w : all_weights(arch_))
    if (!gauge_.is_fixed(w)) free_.push_back(w);
}

std::vector<std::size_t> GaugedMap::pivots() const {
  std::vector<std::size_t> out;
  for (std::size_t l = 0; l < arch_.output_width(); ++l) out.push_back(pivot(l));
  return out;
}

std::vector<RationalCoordinate> GaugedMap::symbolic_coordinates() const {
  auto map = cached_coefficient_map(arch_);
  std::vector<RationalCoordinate> out;
  auto gauged = [&](SparsePoly<Rationals> p) {
    for (const auto& w : all_weights(arch_))
      if (gauge_.is_fixed(w)) p = poly_substitute(p, map->net->weight_var(w), mpq_class(1));
    return p;
  };
  for (std::size_t l = 0; l < map->outputs.size(); ++l) {
    const auto& coeffs = map->outputs[l];
    SparsePoly<Rationals> denominator = gauged(coeffs[pivot(l)]);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (j == pivot(l)) continue;
      out.push_back({l, j, gauged(coeffs[j]), denominator});
    }
  }
  return out;
}

GaugedMap gauge_fix(const Architecture& arch) {
  return GaugedMap(arch, GaugeMask::standard(arch));
}

}  // namespace nv
