#pragma once

// Exact Jacobian of the gauged coefficient map at a point, by forward-mode
// propagation of one tangent direction per free weight through the layer
// recursion, followed by the quotient rule for the dehomogenization.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "nv/errors.hpp"
#include "nv/forms.hpp"
#include "nv/matrix.hpp"
#include "nv/network.hpp"
#include "nv/random.hpp"

namespace nv {

template <class Field>
struct JacobianSample {
  using Element = typename Field::Element;
  std::vector<Element> point;  // free-weight values, GaugedMap::free_weights() order
  Matrix<Element> matrix;      // rows: affine coordinates, cols: free weights
  std::size_t rank = 0;
};

template <class Field>
class JacobianEvaluator {
 public:
  using Element = typename Field::Element;
  using Form = std::vector<Element>;

  JacobianEvaluator(GaugedMap map, Field field) : map_(std::move(map)), field_(std::move(field)) {
    const auto& arch = map_.arch();
    const std::size_t n = arch.input_width();
    tables_.resize(arch.depth());
    for (std::size_t t = 1; t < arch.depth(); ++t) {
      const std::uint64_t base = arch.x_degree(t);
      for (unsigned k = 1; k < arch.degree(t); ++k)
        tables_[t].emplace_back(n, base * k, base);
    }
  }

  const GaugedMap& map() const noexcept { return map_; }
  const Field& field() const noexcept { return field_; }

  // Coefficient vectors y (lex order, degree D) of every output at point.
  std::vector<Form> output_coefficients(std::span<const Element> point) const {
    State s = forward(point);
    return s.layers.back();
  }

  // Throws PivotVanishes when some output's pivot coefficient is zero.
  Matrix<Element> jacobian(std::span<const Element> point) const {
    const auto& arch = map_.arch();
    const Field& f = field_;
    State s = forward(point);
    const auto& y = s.layers.back();
    const std::size_t outputs = arch.output_width();
    const std::size_t per_output = map_.coordinates_per_output();

    std::vector<Element> inv_pivot_sq;
    for (std::size_t l = 0; l < outputs; ++l) {
      const Element& yp = y[l][map_.pivot(l)];
      if (f.is_zero(yp)) throw PivotVanishes(l);
      inv_pivot_sq.push_back(f.inv(f.mul(yp, yp)));
    }

    Matrix<Element> jac(outputs * per_output, map_.free_count(), f.zero());
    for (std::size_t col = 0; col < map_.free_count(); ++col) {
      const auto dy = tangent(s, map_.free_weights()[col]);
      for (std::size_t l = 0; l < outputs; ++l) {
        const std::size_t p = map_.pivot(l);
        const Element& yp = y[l][p];
        const Element& dyp = dy[l][p];
        std::size_t row = l * per_output;
        for (std::size_t j = 0; j < y[l].size(); ++j) {
          if (j == p) continue;
          Element num = f.sub(f.mul(yp, dy[l][j]), f.mul(y[l][j], dyp));
          jac(row++, col) = f.mul(num, inv_pivot_sq[l]);
        }
      }
    }
    return jac;
  }

  JacobianSample<Field> sample(std::vector<Element> point) const {
    JacobianSample<Field> out;
    out.matrix = jacobian(point);
    out.rank = exact_rank(out.matrix, field_);
    out.point = std::move(point);
    return out;
  }

  std::vector<Element> random_point(Rng& rng) const {
    std::vector<Element> point;
    point.reserve(map_.free_count());
    for (std::size_t i = 0; i < map_.free_count(); ++i) point.push_back(field_.random(rng));
    return point;
  }

 private:
  struct State {
    // weights[l-1][r][c]
    std::vector<std::vector<std::vector<Element>>> weights;
    // layers[k-1][j] = F_{k,j}; activated[t][u] = G^{(t)}_u, t = 0..L-1
    std::vector<std::vector<Form>> layers;
    std::vector<std::vector<Form>> activated;
    // powers[t][u][k] = (F_{t,u})^k for k = 0..d_t (index 0 unused)
    std::vector<std::vector<std::vector<Form>>> powers;
  };

  Form zero_form(std::uint64_t degree) const {
    return Form(binomial(map_.arch().input_width() - 1 + degree, map_.arch().input_width() - 1),
                field_.zero());
  }

  State forward(std::span<const Element> point) const {
    const auto& arch = map_.arch();
    const Field& f = field_;
    if (point.size() != map_.free_count())
      throw PreconditionError("sample point has wrong number of coordinates");
    State s;
    std::size_t next = 0;
    for (unsigned l = 1; l <= arch.depth(); ++l) {
      std::vector<std::vector<Element>> w(arch.width(l), std::vector<Element>(arch.width(l - 1)));
      for (unsigned r = 0; r < arch.width(l); ++r)
        for (unsigned c = 0; c < arch.width(l - 1); ++c)
          w[r][c] = map_.gauge().is_fixed({l, r, c}) ? f.one() : point[next++];
      s.weights.push_back(std::move(w));
    }

    const std::size_t n = arch.input_width();
    std::vector<Form> inputs;
    for (std::size_t i = 0; i < n; ++i) {
      Form e = zero_form(1);
      e[i] = f.one();
      inputs.push_back(std::move(e));
    }
    s.activated.push_back(inputs);
    s.powers.resize(arch.depth());
    for (std::size_t k = 1; k <= arch.depth(); ++k) {
      const auto& prev = s.activated.back();
      std::vector<Form> layer;
      for (const auto& row : s.weights[k - 1]) layer.push_back(combine(row, prev));
      if (k < arch.depth()) {
        std::vector<Form> next_activated;
        for (const auto& form : layer) {
          auto pw = powers_of(form, k);
          next_activated.push_back(pw.back());
          s.powers[k].push_back(std::move(pw));
        }
        s.activated.push_back(std::move(next_activated));
      }
      s.layers.push_back(std::move(layer));
    }
    return s;
  }

  // sum_i coeffs[i] * forms[i]
  Form combine(const std::vector<Element>& coeffs, const std::vector<Form>& forms) const {
    const Field& f = field_;
    Form out(forms.front().size(), f.zero());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (f.is_zero(coeffs[i]) || forms[i].empty()) continue;
      for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = f.add(out[j], f.mul(coeffs[i], forms[i][j]));
    }
    return out;
  }

  // [unused, F, F^2, ..., F^{d_t}] for a layer-t form F.
  std::vector<Form> powers_of(const Form& base, std::size_t t) const {
    const auto& arch = map_.arch();
    const unsigned d = arch.degree(t);
    std::vector<Form> pw(d + 1);
    pw[1] = base;
    for (unsigned k = 2; k <= d; ++k) {
      const ProductTable& table = tables_[t][k - 2];
      pw[k] = Form(table.result_size(), field_.zero());
      multiply_add(field_, table, std::span<const Element>(pw[k - 1]),
                   std::span<const Element>(base), std::span<Element>(pw[k]));
    }
    return pw;
  }

  // Derivative of every output form with respect to weight w.
  std::vector<Form> tangent(const State& s, const WeightIndex& w) const {
    const auto& arch = map_.arch();
    const Field& f = field_;
    // dF at layer w.layer: only row w.row moves, by G^{(layer-1)}_{col}.
    std::vector<Form> dF(arch.width(w.layer));
    dF[w.row] = s.activated[w.layer - 1][w.col];
    for (std::size_t t = w.layer; t < arch.depth(); ++t) {
      const unsigned d = arch.degree(t);
      const ProductTable& table = tables_[t][d - 2];
      const Element scale = f.from_int(d);
      std::vector<Form> dG(dF.size());
      for (std::size_t u = 0; u < dF.size(); ++u) {
        if (dF[u].empty()) continue;
        dG[u] = Form(table.result_size(), f.zero());
        multiply_add(f, table, std::span<const Element>(s.powers[t][u][d - 1]),
                     std::span<const Element>(dF[u]), std::span<Element>(dG[u]));
        for (auto& v : dG[u]) v = f.mul(v, scale);
      }
      std::vector<Form> next;
      for (const auto& row : s.weights[t]) next.push_back(combine_sparse(row, dG, table.result_size()));
      dF = std::move(next);
    }
    for (auto& form : dF)
      if (form.empty()) form = zero_form(arch.total_degree());
    return dF;
  }

  Form combine_sparse(const std::vector<Element>& coeffs, const std::vector<Form>& forms,
                      std::size_t size) const {
    const Field& f = field_;
    Form out(size, f.zero());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (forms[i].empty() || f.is_zero(coeffs[i])) continue;
      for (std::size_t j = 0; j < size; ++j) out[j] = f.add(out[j], f.mul(coeffs[i], forms[i][j]));
    }
    return out;
  }

  GaugedMap map_;
  Field field_;
  // tables_[t][k-1] multiplies a degree k*D_{t-1} form by a degree D_{t-1} form.
  std::vector<std::vector<ProductTable>> tables_;
};

template <class Field>
JacobianSample<Field> jacobian_at(const GaugedMap& map,
                                  std::vector<typename Field::Element> point,
                                  const Field& field) {
  return JacobianEvaluator<Field>(map, field).sample(std::move(point));
}

template <class Field>
struct RankEstimate {
  std::size_t rank = 0;
  JacobianSample<Field> witness;
  std::size_t trials = 0;          // completed trials
  std::size_t pivot_failures = 0;  // resamples caused by PivotVanishes
};

// Maximum Jacobian rank over `tries` random points. Trial t draws from the
// stream derive_seed(seed, t, attempt); a vanishing pivot resamples without
// consuming the trial. Stops early once the rank reaches min(rows, cols).
template <class Field>
RankEstimate<Field> generic_rank(const JacobianEvaluator<Field>& eval, std::size_t tries,
                                 std::uint64_t seed) {
  if (tries == 0) throw PreconditionError("generic_rank needs tries >= 1");
  const auto& map = eval.map();
  const std::size_t ceiling = std::min<std::size_t>(map.target_dim(), map.free_count());
  RankEstimate<Field> best;
  std::size_t consecutive_failures = 0;
  for (std::size_t trial = 0; trial < tries; ++trial) {
    for (std::uint64_t attempt = 0;; ++attempt) {
      Rng rng = make_rng(seed, trial, attempt);
      try {
        auto sample = eval.sample(eval.random_point(rng));
        consecutive_failures = 0;
        if (best.trials == 0 || sample.rank > best.rank) {
          best.rank = sample.rank;
          best.witness = std::move(sample);
        }
        break;
      } catch (const PivotVanishes&) {
        ++best.pivot_failures;
        if (++consecutive_failures >= 100 * tries)
          throw SamplingExhausted("pivot coefficient vanished at " +
                                  std::to_string(consecutive_failures) +
                                  " consecutive sample points for " + map.arch().to_string());
      }
    }
    ++best.trials;
    if (best.rank == ceiling) break;
  }
  return best;
}

template <class Field>
RankEstimate<Field> generic_rank(const GaugedMap& map, std::size_t tries, std::uint64_t seed,
                                 const Field& field) {
  return generic_rank(JacobianEvaluator<Field>(map, field), tries, seed);
}

// Ranks of the Jacobian column blocks grouped by the layer owning each free
// weight. Layers 1..L-2 form the normal blocks, layers L-1 and L the secant
// block.
struct BlockRankReport {
  std::vector<std::size_t> layer_ranks;  // index l-1
  std::size_t normal_rank = 0;
  std::size_t last_rank = 0;
  std::size_t total_rank = 0;
};

template <class Field>
BlockRankReport block_ranks(const Matrix<typename Field::Element>& jac, const GaugedMap& map,
                            const Field& field) {
  const std::size_t L = map.arch().depth();
  BlockRankReport out;
  std::vector<std::size_t> normal;
  std::vector<std::size_t> last;
  std::vector<std::vector<std::size_t>> per_layer(L);
  for (std::size_t c = 0; c < map.free_count(); ++c) {
    const unsigned layer = map.free_weights()[c].layer;
    per_layer[layer - 1].push_back(c);
    if (L >= 2 && layer + 1 < L)
      normal.push_back(c);
    else
      last.push_back(c);
  }
  for (const auto& cols : per_layer) out.layer_ranks.push_back(exact_rank(jac.select_columns(cols), field));
  out.normal_rank = exact_rank(jac.select_columns(normal), field);
  out.last_rank = exact_rank(jac.select_columns(last), field);
  out.total_rank = exact_rank(jac, field);
  return out;
}

template <class Field>
BlockRankReport block_ranks(const GaugedMap& map, std::vector<typename Field::Element> point,
                            const Field& field) {
  const auto jac = JacobianEvaluator<Field>(map, field).jacobian(point);
  return block_ranks(jac, map, field);
}

}  // namespace nv
