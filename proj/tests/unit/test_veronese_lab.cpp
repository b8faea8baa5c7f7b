#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "nv/errors.hpp"
#include "nv/matrix.hpp"
#include "nv/theory.hpp"
#include "nv/veronese.hpp"

using namespace nv;

namespace {

std::vector<std::string> expansion_names(const CompositeVeronese& cv) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < cv.coordinate_count(); ++i) out.push_back(cv.coordinate_name(i));
  return out;
}

// Rank of the matrix of images of `rows` random integer points.
std::size_t image_span(const CompositeVeronese& cv, std::size_t rows, Rng& rng) {
  std::uniform_int_distribution<int> dist(-30, 30);
  Matrix<mpq_class> m(rows, cv.coordinate_count());
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<mpq_class> p(cv.input_vars());
    for (auto& v : p) v = dist(rng);
    const auto img = cv.evaluate(p);
    for (std::size_t c = 0; c < img.size(); ++c) m(r, c) = img[c];
  }
  return exact_rank(m, Rationals{});
}

std::vector<mpq_class> linear(std::initializer_list<int> c) {
  std::vector<mpq_class> out;
  for (int v : c) out.emplace_back(v);
  return out;
}

}  // namespace

TEST_CASE("composite Veronese coordinates") {
  const auto conic = composite_veronese(2, {2});
  CHECK(expansion_names(conic) == std::vector<std::string>{"x0^2", "x0*x1", "x1^2"});
  CHECK(conic.evaluate(linear({2, 3})) == linear({4, 6, 9}));

  const auto plane = composite_veronese(3, {2});
  CHECK(plane.coordinate_count() == 6);
  CHECK(plane.ambient_dim() == 5);

  const auto twice = composite_veronese(2, {2, 2});
  CHECK(twice.coordinate_count() == 6);
  CHECK(expansion_names(twice) ==
        std::vector<std::string>{"z0^2", "z0*z1", "z0*z2", "z1^2", "z1*z2", "z2^2"});
  const auto quartics = twice.input_expansion();
  CHECK(quartics.size() == 6);
  for (const auto& m : quartics) CHECK(m.degree() == 4);
  Rng rng(2);
  CHECK(image_span(twice, 20, rng) == 5);

  REQUIRE(twice.stages().size() == 2);
  CHECK(twice.stages()[1].source_vars == 3);
  for (unsigned e : {2u, 3u})
    for (unsigned e2 : {2u, 3u}) {
      const auto cv = composite_veronese(3, {e, e2});
      const std::uint64_t m1 = binomial(2 + e, 2);
      CHECK(cv.coordinate_count() == binomial(m1 - 1 + e2, m1 - 1));
    }
}

TEST_CASE("composite Veronese preconditions") {
  CHECK_THROWS_AS(composite_veronese(1, {2}), PreconditionError);
  CHECK_THROWS_AS(composite_veronese(2, {1}), PreconditionError);
  CHECK_THROWS_AS(composite_veronese(5, {4, 4}), AmbientTooLarge);
  CHECK_THROWS_AS(composite_veronese(3, {2, 2}, 20), AmbientTooLarge);
  CHECK_NOTHROW(composite_veronese(3, {2, 2}, 21));
}

TEST_CASE("linear relations on composite images") {
  const auto twice = composite_veronese(2, {2, 2});
  const auto rel = image_linear_relations(twice);
  REQUIRE(rel.size() == 1);
  CHECK(rel[0].to_string(twice) == "z0*z2 - z1^2");
  CHECK(rel[0].coefficients ==
        std::vector<mpz_class>{0, 0, 1, -1, 0, 0});

  CHECK(image_linear_relations(composite_veronese(2, {2})).empty());
  CHECK(image_linear_relations(composite_veronese(2, {3, 2})).size() == 3);
  CHECK_THROWS_AS(image_linear_relations(twice, {.oversample = 5}), PreconditionError);
}

TEST_CASE("relations are stable under reseeding and vanish on the image") {
  Rng rng(8);
  for (const auto& [n, degrees] : std::vector<std::pair<std::size_t, std::vector<unsigned>>>{
           {2, {2, 2}}, {2, {3, 2}}, {2, {2, 3}}, {3, {2, 2}}, {2, {2, 2, 2}}}) {
    const auto cv = composite_veronese(n, degrees);
    CAPTURE(cv.coordinate_count());
    const auto a = image_linear_relations(cv, {.seed = 1});
    const auto b = image_linear_relations(cv, {.seed = 2});
    CHECK(a.size() == b.size());
    CHECK(a.size() == cv.coordinate_count() - image_span(cv, cv.coordinate_count() + 10, rng));
    std::uniform_int_distribution<int> dist(-99, 99);
    for (int t = 0; t < 50; ++t) {
      std::vector<mpq_class> p(n);
      for (auto& v : p) v = dist(rng);
      const auto img = cv.evaluate(p);
      for (const auto& r : a) {
        mpq_class sum = 0;
        for (std::size_t i = 0; i < img.size(); ++i) sum += r.coefficients[i] * img[i];
        CHECK(sum == 0);
      }
    }
  }
}

TEST_CASE("sampled secant dimensions") {
  CHECK(empirical_secant_dim(2, 3, 2) == 3);
  CHECK(empirical_secant_dim(3, 4, 5, 10, 1) == 13);
  CHECK(empirical_secant_dim(3, 4, 5, 10, 2) == 13);
  CHECK(empirical_secant_dim(3, 4, 5) < expected_secant_dim(3, 4, 5));
  CHECK(expected_secant_dim(3, 4, 5) == 14);
  CHECK(empirical_secant_dim(3, 2, 2) == 4);
  CHECK(expected_secant_dim(3, 2, 2) == 5);
  CHECK(empirical_secant_dim(4, 1, 2) == 3);

  for (unsigned nvars = 2; nvars <= 5; ++nvars)
    for (unsigned deg = 1; deg <= 4; ++deg)
      for (unsigned s = 1; s <= 10; ++s) CHECK(empirical_secant_dim(nvars, deg, s) <= expected_secant_dim(nvars, deg, s));
}

TEST_CASE("secant table: classification matches sampling up to ambient 70") {
  for (unsigned nvars = 2; nvars <= 5; ++nvars)
    for (unsigned deg = 1; deg <= 4; ++deg) {
      if (binomial(nvars - 1 + deg, nvars - 1) > 70) continue;
      for (unsigned s = 1; s <= 10; ++s) {
        CAPTURE(nvars);
        CAPTURE(deg);
        CAPTURE(s);
        const bool sampled = empirical_secant_dim(nvars, deg, s) < expected_secant_dim(nvars, deg, s);
        CHECK(ah_secant_defective(nvars, deg, s) == sampled);
      }
    }
}

TEST_CASE("independence of powers") {
  PowerInstance inst{.nvars = 2, .degree = 1, .forms = {linear({1, 0}), linear({0, 1}), linear({1, 1})}};
  inst.exponent = 1;
  auto r = power_independence(inst);
  CHECK_FALSE(r.independent);
  CHECK(r.rank == 2);
  inst.exponent = 2;
  r = power_independence(inst);
  CHECK(r.independent);
  CHECK(r.rank == 3);

  const PowerInstance quadrics{.nvars = 3, .degree = 2, .forms = random_forms(3, 2, 4, 7, 0), .exponent = 3};
  CHECK(power_independence(quadrics).independent);

  PowerInstance bad{.nvars = 2, .degree = 1, .forms = {linear({1, 2}), linear({0, 1}), linear({-2, -4})}};
  try {
    power_independence(bad);
    FAIL("expected ProportionalPair");
  } catch (const ProportionalPair& e) {
    CHECK(e.first() == 0);
    CHECK(e.second() == 2);
  }
  CHECK(find_proportional_pair({linear({1, 1}), linear({0, 0})}) == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK_FALSE(find_proportional_pair({linear({1, 1}), linear({1, 2})}).has_value());
}

TEST_CASE("threshold scans") {
  auto independent = [](std::size_t d, std::size_t k, unsigned s, std::size_t trials) {
    return power_threshold_scan({.nvars = d, .count = k, .degree = s, .trials = trials})
        .independent_at_threshold;
  };
  CHECK(independent(2, 3, 1, 100) == 100);
  CHECK(independent(3, 5, 2, 50) == 50);
  CHECK(independent(2, 2, 1, 10) == 10);

  const auto report = power_threshold_scan({.nvars = 2, .count = 3, .degree = 1, .trials = 20,
                                            .find_minimal = true});
  CHECK(report.threshold == 2);
  REQUIRE(report.minimal_r.size() == 20);
  for (auto r : report.minimal_r) CHECK(r == 2);
  CHECK(report.monotonicity_violations == 0);

  CHECK_THROWS_AS(power_threshold_scan({.count = 1}), PreconditionError);
  CHECK_THROWS_AS(power_threshold_scan({.trials = 0}), PreconditionError);
}

TEST_CASE("powers stay independent at and above k - 1") {
  for (std::size_t d = 2; d <= 3; ++d)
    for (std::size_t k = 2; k <= 5; ++k)
      for (unsigned s = 1; s <= 2; ++s)
        for (std::uint64_t trial = 0; trial < 5; ++trial) {
          const auto forms = random_forms(d, s, k, 11, trial);
          bool previous = false;
          for (unsigned r = 1; r <= k + 1; ++r) {
            CAPTURE(d);
            CAPTURE(k);
            CAPTURE(s);
            CAPTURE(r);
            const bool now = power_independence({.nvars = d, .degree = s, .forms = forms, .exponent = r}).independent;
            if (r + 1 >= k) CHECK(now);
            if (previous) CHECK(now);
            previous = now;
          }
        }
}
