#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "nv/errors.hpp"
#include "nv/jacobian.hpp"
#include "nv/stats.hpp"
#include "nv/theory.hpp"

using namespace nv;

namespace {

const PrimeField kField(choose_prime(1));

Matrix<mpq_class> from_rows(const std::vector<std::vector<mpq_class>>& rows) {
  Matrix<mpq_class> m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

// The 13 x 8 matrix of the (2,3,2,1),(4,3) walkthrough.
Matrix<mpq_class> guiding_matrix(mpq_class a, mpq_class b, mpq_class b11, mpq_class b21,
                                 mpq_class b12, mpq_class b22, mpq_class c11) {
  const mpq_class a3 = a * a * a, b3 = b * b * b;
  std::vector<std::vector<mpq_class>> rows(13, std::vector<mpq_class>(8, 0));
  rows[0][0] = 12 * b11 * c11, rows[0][2] = 12 * a3 * c11;
  rows[1][0] = 12 * b21, rows[1][2] = 12 * a3;
  rows[2][1] = 12 * b12 * c11, rows[2][2] = 12 * b3 * c11;
  rows[3][1] = 12 * b22, rows[3][2] = 12 * b3;
  rows[4][2] = 36 * a * b * b * c11;
  rows[5][2] = 36 * a * a * b * c11;
  rows[6][2] = 36 * a * b * b;
  rows[7][2] = 36 * a * a * b;
  rows[8][3] = 3 * c11;
  rows[9][4] = 3 * c11;
  rows[10][5] = 3;
  rows[11][6] = 3;
  rows[12][7] = 1;
  return from_rows(rows);
}

// Gauge of the (2,2,2,1),(3,3) worked example: a_{1,2} = a_{2,1} = 1 plus
// the last column of W_2 and W_3.
GaugedMap worked_example_map() {
  const auto arch = Architecture::validate({2, 2, 2, 1}, {3, 3});
  return GaugedMap(arch, GaugeMask::fixing(arch, {{1, 0, 1}, {1, 1, 0}, {2, 0, 1}, {2, 1, 1}, {3, 0, 1}}));
}

std::vector<mpq_class> random_integer_point(std::size_t n, Rng& rng) {
  std::uniform_int_distribution<int> dist(-50, 50);
  std::vector<mpq_class> p(n);
  for (auto& v : p) v = dist(rng);
  return p;
}

// PrimeField whose sampler always returns zero.
struct ZeroSampler : PrimeField {
  using PrimeField::PrimeField;
  template <class R>
  Element random(R&) const { return 0; }
};

}  // namespace

TEST_CASE("exact rank of small matrices") {
  Matrix<mpq_class> id(3, 3, 0);
  for (int i = 0; i < 3; ++i) id(i, i) = 1;
  CHECK(exact_rank(id, Rationals{}) == 3);
  CHECK(exact_rank(Matrix<mpq_class>(4, 5, 0), Rationals{}) == 0);

  const auto m = guiding_matrix(1, 2, 3, 5, 7, 11, 13);
  CHECK(exact_rank(m, Rationals{}) == 8);
  Matrix<PrimeField::Element> mp(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) mp(r, c) = kField.from_rational(m(r, c));
  CHECK(exact_rank(mp, kField) == 8);

  Matrix<mpz_class> z(3, 3);
  int v = 1;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) z(r, c) = v++;
  CHECK(bareiss_rank(z) == 2);

  const auto half = from_rows({{mpq_class(1, 2), mpq_class(1, 3)}, {mpq_class(3, 2), 1}});
  CHECK(exact_rank(half, Rationals{}) == 1);
}

TEST_CASE("worked example columns at a_{1,1} = a_{2,2} = 0") {
  const auto map = worked_example_map();
  std::vector<std::string> names;
  for (const auto& w : map.free_weights()) names.push_back(w.name());
  REQUIRE(names == std::vector<std::string>{"w1_0_0", "w1_1_1", "w2_0_0", "w2_1_0", "w3_0_0"});

  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const mpq_class b11 = nvtest::small_rational(rng, true), b21 = nvtest::small_rational(rng, true);
    mpq_class c = nvtest::small_rational(rng, true);
    if (c == -1) c = 2;
    const auto sample = jacobian_at(map, {0, 0, b11, b21, c}, Rationals{});
    REQUIRE(sample.matrix.rows() == 9);
    REQUIRE(sample.matrix.cols() == 5);

    // y_j is the coefficient of x0^{9-j} x1^j.
    const mpq_class y0 = c + 1, y3 = 3 * (c * b11 + b21), y6 = 3 * (c * b11 * b11 + b21 * b21),
                    y9 = c * b11 * b11 * b11 + b21 * b21 * b21;
    auto column = [&](std::size_t col) {
      std::vector<mpq_class> out;
      for (std::size_t r = 0; r < 9; ++r) out.push_back(sample.matrix(r, col));
      return out;
    };
    auto sparse = [](std::vector<std::pair<std::size_t, mpq_class>> entries) {
      std::vector<mpq_class> out(9, 0);
      for (auto& [j, v] : entries) out[j - 1] = v;
      return out;
    };
    CHECK(column(0) == sparse({{2, 3 * y3 / y0}, {5, 6 * y6 / y0}, {8, 9 * y9 / y0}}));
    CHECK(column(1) == sparse({{1, 9}, {4, 6 * y3 / y0}, {7, 3 * y6 / y0}}));
    CHECK(column(2) == sparse({{3, 3 * c / y0}, {6, 6 * c * b11 / y0}, {9, 3 * c * b11 * b11 / y0}}));
    CHECK(column(3) == sparse({{3, 3 / y0}, {6, 6 * b21 / y0}, {9, 3 * b21 * b21 / y0}}));
    // d/dc of y_j / y_0 with dy_j/dc the coefficients of R^3 and dy_0/dc = 1.
    const mpq_class r3[4] = {1, 3 * b11, 3 * b11 * b11, b11 * b11 * b11};
    const mpq_class y[4] = {y0, y3, y6, y9};
    CHECK(column(4) == sparse({{3, (y0 * r3[1] - y[1]) / (y0 * y0)},
                               {6, (y0 * r3[2] - y[2]) / (y0 * y0)},
                               {9, (y0 * r3[3] - y[3]) / (y0 * y0)}}));
    CHECK(sample.rank == 5);

    const auto blocks = block_ranks(sample.matrix, map, Rationals{});
    CHECK(blocks.normal_rank == 2);
    CHECK(blocks.last_rank == 3);
    CHECK(blocks.total_rank == 5);
  }
}

TEST_CASE("Jacobian ranks at single points") {
  const auto linear = gauge_fix(Architecture::validate({2, 1}, {}));
  const auto s = jacobian_at(linear, {7}, Rationals{});
  CHECK(s.matrix.rows() == 1);
  CHECK(s.rank == 1);
  CHECK_THROWS_AS(jacobian_at(linear, {0}, Rationals{}), PivotVanishes);

  const auto guiding = gauge_fix(Architecture::validate({2, 3, 2, 1}, {4, 3}));
  Rng rng(11);
  const auto sample = jacobian_at(guiding, random_integer_point(8, rng), Rationals{});
  CHECK(sample.matrix.rows() == 12);
  CHECK(sample.rank == 8);
  const auto blocks = block_ranks(sample.matrix, guiding, Rationals{});
  CHECK(blocks.layer_ranks == std::vector<std::size_t>{3, 4, 1});
  CHECK(blocks.normal_rank == 3);
  CHECK(blocks.last_rank == 5);
  CHECK(blocks.total_rank == 8);

  const auto shallow = gauge_fix(Architecture::validate({3, 3, 1}, {2}));
  const auto b = block_ranks(shallow, jacobian_at(shallow, random_integer_point(shallow.free_count(), rng),
                                                  Rationals{}).point, Rationals{});
  CHECK(b.normal_rank == 0);
  CHECK(b.last_rank == b.total_rank);
}

TEST_CASE("generic rank and dimension reports") {
  auto rank_of = [](std::vector<unsigned> w, std::vector<unsigned> d) {
    return generic_rank(gauge_fix(Architecture::validate(w, d)), 10, 1, kField).rank;
  };
  CHECK(rank_of({2, 3, 2, 1}, {3, 3}) == 7);
  CHECK(rank_of({2, 2, 2, 1}, {3, 3}) == 5);
  CHECK(rank_of({2, 3, 2, 1}, {4, 3}) == 8);

  const auto necessity = neurovariety_stats(Architecture::validate({2, 3, 2, 1}, {3, 3}));
  CHECK(necessity.expdim_general == 8);
  CHECK(necessity.applicable_expdim() == 8);
  CHECK(necessity.dim_actual == 7);
  CHECK(necessity.fiber_dim == 1);
  CHECK(necessity.defective);
  CHECK(necessity.trials == 10);

  const auto worked = neurovariety_stats(Architecture::validate({2, 2, 2, 1}, {3, 3}));
  CHECK(worked.expdim_refined == 5);
  CHECK(worked.dim_actual == 5);
  CHECK_FALSE(worked.defective);

  const auto multi = neurovariety_stats(Architecture::validate({2, 2, 2, 2}, {3, 3}),
                                        {.confirm_rational = true});
  CHECK(multi.expdim_general == 6);
  CHECK_FALSE(multi.expdim_refined.has_value());
  CHECK(multi.dim_actual == 6);
  CHECK(multi.rational_rank == 6);
  CHECK_FALSE(multi.defective);

  const auto over_q = neurovariety_stats(Architecture::validate({2, 3, 2, 1}, {4, 3}),
                                         {.tries = 2, .domain = Domain::rational(), .blocks = true});
  CHECK(over_q.dim_actual == 8);
  REQUIRE(over_q.blocks.has_value());
  CHECK(over_q.blocks->normal_rank == 3);
  CHECK(over_q.blocks->last_rank == 5);
}

TEST_CASE("reports are deterministic and bounded") {
  for (const auto& arch : nvtest::small_grid(3, 3, 3, 2)) {
    CAPTURE(arch.to_string());
    const auto a = neurovariety_stats(arch, {.tries = 3, .seed = 17});
    const auto b = neurovariety_stats(arch, {.tries = 3, .seed = 17});
    CHECK(a.dim_actual == b.dim_actual);
    CHECK(a.witness == b.witness);
    CHECK(a.trials == b.trials);
    CHECK(a.domain == b.domain);
    CHECK(a.dim_actual <= std::min(a.free_weights, a.target_dim));
    CHECK(a.dim_actual <= a.applicable_expdim());
    CHECK(a.fiber_dim == a.free_weights - a.dim_actual);
    CHECK(a.trials >= 1);
    CHECK(a.trials <= 3);
  }
}

TEST_CASE("more tries never lower the rank") {
  Rng rng(3);
  const auto grid = nvtest::small_grid(3, 3, 3, 2);
  for (int i = 0; i < 25; ++i) {
    const auto& arch = grid[rng() % grid.size()];
    CAPTURE(arch.to_string());
    const JacobianEvaluator<PrimeField> eval(gauge_fix(arch), kField);
    std::size_t previous = 0;
    for (std::size_t tries : {1, 2, 4, 8}) {
      const auto r = generic_rank(eval, tries, 99).rank;
      CHECK(r >= previous);
      previous = r;
    }
  }
}

TEST_CASE("forward-mode entries equal symbolic derivatives") {
  Rng rng(13);
  std::size_t checked = 0;
  for (const auto& arch : nvtest::small_grid(3, 2, 3, 2)) {
    const auto map = gauge_fix(arch);
    if (map.free_count() > 8 || arch.total_degree() > 6) continue;
    CAPTURE(arch.to_string());
    const auto coords = map.symbolic_coordinates();
    const auto cmap = cached_coefficient_map(arch);
    const auto point = random_integer_point(map.free_count(), rng);
    std::vector<mpq_class> full(cmap->net->ring()->nvars(), mpq_class(0));
    for (std::size_t i = 0; i < map.free_count(); ++i)
      full[cmap->net->weight_var(map.free_weights()[i])] = point[i];
    const std::span<const mpq_class> at(full);
    Matrix<mpq_class> jac;
    try {
      jac = jacobian_at(map, point, Rationals{}).matrix;
    } catch (const PivotVanishes&) {
      continue;
    }
    REQUIRE(jac.rows() == coords.size());
    for (std::size_t r = 0; r < coords.size(); ++r) {
      const auto& c = coords[r];
      const mpq_class num = poly_eval(c.numerator, at), den = poly_eval(c.denominator, at);
      for (std::size_t col = 0; col < map.free_count(); ++col) {
        const auto var = cmap->net->weight_var(map.free_weights()[col]);
        const mpq_class dn = poly_eval(poly_partial(c.numerator, var), at);
        const mpq_class dd = poly_eval(poly_partial(c.denominator, var), at);
        CHECK(jac(r, col) == (dn * den - num * dd) / (den * den));
      }
    }
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("prime field and rational ranks agree") {
  Rng rng(31);
  const auto grid = nvtest::small_grid(3, 3, 3, 2);
  for (int i = 0; i < 20; ++i) {
    const auto& arch = grid[rng() % grid.size()];
    CAPTURE(arch.to_string());
    const auto map = gauge_fix(arch);
    const auto p = generic_rank(map, 10, 5, kField).rank;
    const auto q = generic_rank(map, 10, 5, Rationals{}).rank;
    CHECK(p == q);
  }
}

TEST_CASE("normal blocks have full rank when the sufficient conditions hold") {
  std::size_t checked = 0;
  for (const auto& arch : nvtest::small_grid(3, 3, 3, 1)) {
    if (arch.depth() < 3) continue;
    if (theorem_verdict(arch).kind != VerdictKind::PredictedNonDefective) continue;
    if (arch.width(arch.depth() - 1) < 2) continue;
    CAPTURE(arch.to_string());
    const auto report = neurovariety_stats(arch, {.blocks = true});
    REQUIRE(report.blocks.has_value());
    const auto& b = *report.blocks;
    std::size_t normal_params = 0;
    for (std::size_t j = 1; j + 1 < arch.depth(); ++j) {
      const std::size_t params = std::size_t{arch.width(j)} * (arch.width(j - 1) - 1);
      CHECK(b.layer_ranks[j - 1] == params);
      normal_params += params;
    }
    CHECK(b.total_rank == normal_params + b.last_rank);
    ++checked;
  }
  CHECK(checked > 0);
}

// A single neuron before the output makes F = c G^d with G a generic element
// of Sec_{n_{L-2}} of a Veronese variety, which may fill or be defective even
// though the sufficient conditions hold.
TEST_CASE("single-neuron penultimate layers fall short of the block sum") {
  struct Case {
    std::vector<unsigned> widths, degrees;
    std::uint64_t dim, block_sum;
  };
  for (const auto& c : std::vector<Case>{{{3, 2, 1, 1}, {2, 2}, 4, 5},
                                         {{3, 2, 1, 1}, {2, 3}, 4, 5},
                                         {{3, 3, 1, 1}, {2, 2}, 5, 8},
                                         {{2, 3, 1, 1}, {4, 2}, 4, 5}}) {
    const auto arch = Architecture::validate(c.widths, c.degrees);
    CAPTURE(arch.to_string());
    REQUIRE(theorem_verdict(arch).kind == VerdictKind::PredictedNonDefective);
    const auto report = neurovariety_stats(arch, {.blocks = true});
    CHECK(report.dim_actual == c.dim);
    std::size_t normal_params = 0;
    for (std::size_t j = 1; j + 1 < arch.depth(); ++j)
      normal_params += std::size_t{arch.width(j)} * (arch.width(j - 1) - 1);
    CHECK(normal_params + report.blocks->last_rank == c.block_sum);
    CHECK(report.defective);
  }
}

TEST_CASE("explicit linear relation among the defect vectors") {
  const auto ring = make_ring(Rationals{}, {"x", "y"});
  const auto x = SparsePoly<Rationals>::variable(ring, 0), y = SparsePoly<Rationals>::variable(ring, 1);
  auto k = [&](const mpq_class& v) { return SparsePoly<Rationals>::constant(ring, v); };
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    mpq_class a1, a2, a3;
    do {
      a1 = nvtest::small_rational(rng), a2 = nvtest::small_rational(rng), a3 = nvtest::small_rational(rng);
    } while (a1 == a2 || a1 == a3 || a2 == a3);
    const mpq_class b11 = nvtest::small_rational(rng, true), b12 = nvtest::small_rational(rng, true);
    const auto L1 = k(a1) * x + y, L2 = k(a2) * x + y, L3 = k(a3) * x + y;
    const auto R = k(b11) * poly_pow(L1, 3) + k(b12) * poly_pow(L2, 3) + poly_pow(L3, 3);
    const auto R2 = poly_pow(R, 2);
    const mpq_class A = a1 - a2, A3 = A * A * A;
    const mpq_class c1 = 3 * (a1 - a3) * (a2 - a3) * (a2 - a3) * A;
    const mpq_class c3 = 3 * (a1 - a3) * (a1 - a3) * (a2 - a3) * A;
    const mpq_class c7 = -(a2 - a3) * (a2 - a3) * (3 * a1 - a2 - 2 * a3) - b11 * A3;
    const mpq_class c9 = -(a1 - a3) * (a1 - a3) * (a1 - 3 * a2 + 2 * a3) - b12 * A3;
    const mpq_class c11 = A3;
    const auto sum = k(c1) * R2 * poly_pow(L1, 2) * x + k(c3) * R2 * poly_pow(L2, 2) * x +
                     k(c7) * R2 * poly_pow(L1, 3) + k(c9) * R2 * poly_pow(L2, 3) +
                     k(c11) * poly_pow(R, 3);
    CHECK(sum.is_zero());
    CHECK(c11 != 0);
  }
}

TEST_CASE("persistent pivot failure exhausts sampling") {
  const JacobianEvaluator<ZeroSampler> eval(gauge_fix(Architecture::validate({2, 2, 1}, {2})),
                                            ZeroSampler(choose_prime(1)));
  CHECK_THROWS_AS(generic_rank(eval, 2, 1), SamplingExhausted);
  CHECK_THROWS_AS(generic_rank(gauge_fix(Architecture::validate({2, 2, 1}, {2})), 0, 1, kField),
                  PreconditionError);
}
