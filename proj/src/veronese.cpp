#include "nv/veronese.hpp"

#include "nv/architecture.hpp"
#include "nv/errors.hpp"
#include "nv/forms.hpp"
#include "nv/jacobian.hpp"
#include "nv/matrix.hpp"
#include "nv/random.hpp"

namespace nv {

CompositeVeronese::CompositeVeronese(std::size_t nvars, std::vector<unsigned> degrees,
                                     std::uint64_t cap)
    : nvars_(nvars), degrees_(std::move(degrees)) {
  if (nvars < 2) throw PreconditionError("composite Veronese needs at least 2 input variables");
  if (degrees_.empty()) throw PreconditionError("composite Veronese needs at least one degree");
  std::size_t vars = nvars;
  for (unsigned e : degrees_) {
    if (e < 2) throw PreconditionError("Veronese degrees must be at least 2");
    std::uint64_t size = 0;
    try {
      size = binomial(vars - 1 + e, vars - 1);
    } catch (const PreconditionError&) {
      throw AmbientTooLarge("composite Veronese ambient exceeds 64 bits");
    }
    if (size > cap)
      throw AmbientTooLarge("composite Veronese stage has " + std::to_string(size) +
                            " coordinates, cap is " + std::to_string(cap));
    stages_.push_back({e, vars, monomials_of_degree(vars, e)});
    vars = size;
  }
}

std::vector<mpq_class> CompositeVeronese::evaluate(const std::vector<mpq_class>& point) const {
  if (point.size() != nvars_) throw PreconditionError("source point has wrong dimension");
  std::vector<mpq_class> values = point;
  for (const auto& stage : stages_) {
    std::vector<mpq_class> next;
    next.reserve(stage.coordinates.size());
    for (const auto& m : stage.coordinates) {
      mpq_class v = 1;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (Exponent k = 0; k < m[i]; ++k) v *= values[i];
      next.push_back(v);
    }
    values = std::move(next);
  }
  return values;
}

std::vector<Monomial> CompositeVeronese::input_expansion() const {
  std::vector<Monomial> current;
  for (std::size_t i = 0; i < nvars_; ++i) {
    Monomial m(nvars_);
    m[i] = 1;
    current.push_back(m);
  }
  for (const auto& stage : stages_) {
    std::vector<Monomial> next;
    for (const auto& m : stage.coordinates) {
      Monomial acc(nvars_);
      for (std::size_t i = 0; i < m.size(); ++i)
        for (Exponent k = 0; k < m[i]; ++k) acc = acc * current[i];
      next.push_back(acc);
    }
    current = std::move(next);
  }
  return current;
}

std::string CompositeVeronese::coordinate_name(std::size_t i) const {
  const auto& last = stages_.back();
  const char prefix = stages_.size() == 1 ? 'x' : 'z';
  std::vector<std::string> names;
  for (std::size_t v = 0; v < last.source_vars; ++v) names.push_back(prefix + std::to_string(v));
  return format_monomial(last.coordinates.at(i), names);
}

CompositeVeronese composite_veronese(std::size_t nvars, std::vector<unsigned> degrees,
                                     std::uint64_t cap) {
  return CompositeVeronese(nvars, std::move(degrees), cap);
}

std::string LinearRelation::to_string(const CompositeVeronese& cv) const {
  std::string out;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    const mpz_class& c = coefficients[i];
    if (c == 0) continue;
    const mpz_class mag = abs(c);
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    if (mag != 1) out += mag.get_str() + "*";
    out += cv.coordinate_name(i);
  }
  return out.empty() ? "0" : out;
}

namespace {

LinearRelation primitive_relation(const std::vector<mpq_class>& v) {
  mpz_class den = 1;
  for (const auto& c : v) den = lcm(den, mpz_class(c.get_den()));
  std::vector<mpz_class> ints;
  mpz_class g = 0;
  for (const auto& c : v) {
    mpz_class z = mpz_class(c.get_num()) * (den / c.get_den());
    g = gcd(g, z);
    ints.push_back(z);
  }
  int sign = 1;
  for (const auto& z : ints)
    if (z != 0) {
      sign = z < 0 ? -1 : 1;
      break;
    }
  for (auto& z : ints) z = z / g * sign;
  return {std::move(ints)};
}

std::vector<mpq_class> random_source_point(const CompositeVeronese& cv, Rng& rng) {
  const Rationals q;
  std::vector<mpq_class> p;
  for (std::size_t i = 0; i < cv.input_vars(); ++i) p.push_back(q.random(rng));
  return p;
}

}  // namespace

std::vector<LinearRelation> image_linear_relations(const CompositeVeronese& cv,
                                                   const RelationOptions& options) {
  const std::size_t cols = cv.coordinate_count();
  const std::size_t rows = options.oversample == 0 ? cv.ambient_dim() + 10 : options.oversample;
  if (rows < cols)
    throw PreconditionError("oversample must be at least ambient dimension + 1 (" +
                            std::to_string(cols) + ")");
  const Rationals q;
  constexpr std::uint64_t kAttempts = 16;
  for (std::uint64_t attempt = 0; attempt < kAttempts; ++attempt) {
    Rng rng = make_rng(options.seed, 0, attempt);
    Matrix<mpq_class> eval(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      const auto values = cv.evaluate(random_source_point(cv, rng));
      for (std::size_t c = 0; c < cols; ++c) eval(r, c) = values[c];
    }
    std::vector<LinearRelation> relations;
    for (const auto& v : right_kernel(std::move(eval), q)) relations.push_back(primitive_relation(v));

    Rng check = make_rng(options.seed, 1, attempt);
    bool verified = true;
    for (std::size_t k = 0; k < options.verify_points && verified; ++k) {
      const auto values = cv.evaluate(random_source_point(cv, check));
      for (const auto& rel : relations) {
        mpq_class acc = 0;
        for (std::size_t c = 0; c < cols; ++c) acc += rel.coefficients[c] * values[c];
        if (acc != 0) {
          verified = false;
          break;
        }
      }
    }
    if (verified) return relations;
  }
  throw SamplingExhausted("linear relations failed verification at fresh points");
}

std::uint64_t expected_secant_dim(unsigned nvars, unsigned deg, unsigned s) {
  return std::min<std::uint64_t>(std::uint64_t{s} * nvars, binomial(nvars - 1 + deg, nvars - 1)) - 1;
}

std::size_t empirical_secant_dim(unsigned nvars, unsigned deg, unsigned s, std::size_t tries,
                                 std::uint64_t seed) {
  if (s < 1) throw PreconditionError("secant order must be at least 1");
  if (nvars < 1) throw PreconditionError("secant variety needs at least one variable");
  if (deg == 1) return nvars - 1;
  const auto arch = Architecture::validate({nvars, s, 1}, {deg});
  const PrimeField field(choose_prime(seed));
  return generic_rank(gauge_fix(arch), tries, seed, field).rank;
}

std::optional<std::pair<std::size_t, std::size_t>> find_proportional_pair(
    const std::vector<std::vector<mpq_class>>& forms) {
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (std::size_t j = i + 1; j < forms.size(); ++j) {
      const auto& a = forms[i];
      const auto& b = forms[j];
      bool proportional = true;
      for (std::size_t u = 0; u < a.size() && proportional; ++u)
        for (std::size_t v = u + 1; v < a.size(); ++v)
          if (a[u] * b[v] != a[v] * b[u]) {
            proportional = false;
            break;
          }
      if (proportional) return std::make_pair(i, j);
    }
  return std::nullopt;
}

namespace {

std::vector<mpq_class> form_power(const std::vector<mpq_class>& p, std::size_t nvars,
                                  unsigned degree, unsigned r) {
  const Rationals q;
  std::vector<mpq_class> acc{mpq_class(1)};
  for (unsigned j = 0; j < r; ++j) {
    const ProductTable table(nvars, std::uint64_t{degree} * j, degree);
    std::vector<mpq_class> next(table.result_size(), mpq_class(0));
    multiply_add(q, table, std::span<const mpq_class>(acc), std::span<const mpq_class>(p),
                 std::span<mpq_class>(next));
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

PowerResult power_independence(const PowerInstance& inst) {
  const std::size_t width = binomial(inst.nvars - 1 + inst.degree, inst.nvars - 1);
  for (const auto& f : inst.forms)
    if (f.size() != width) throw PreconditionError("form has wrong number of coefficients");
  if (auto pair = find_proportional_pair(inst.forms)) throw ProportionalPair(pair->first, pair->second);
  if (inst.forms.empty()) return {true, 0};

  const std::size_t cols = binomial(inst.nvars - 1 + std::uint64_t{inst.degree} * inst.exponent,
                                    inst.nvars - 1);
  Matrix<mpq_class> m(inst.forms.size(), cols);
  for (std::size_t i = 0; i < inst.forms.size(); ++i) {
    const auto pw = form_power(inst.forms[i], inst.nvars, inst.degree, inst.exponent);
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = pw[c];
  }
  const std::size_t rank = exact_rank(m, Rationals{});
  return {rank == inst.forms.size(), rank};
}

std::vector<std::vector<mpq_class>> random_forms(std::size_t nvars, unsigned degree,
                                                 std::size_t count, std::uint64_t seed,
                                                 std::uint64_t stream) {
  const Rationals q;
  const std::size_t width = binomial(nvars - 1 + degree, nvars - 1);
  for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
    Rng rng = make_rng(seed, stream, attempt);
    std::vector<std::vector<mpq_class>> forms(count);
    for (auto& f : forms)
      for (std::size_t c = 0; c < width; ++c) f.push_back(q.random(rng));
    if (!find_proportional_pair(forms)) return forms;
  }
  throw SamplingExhausted("could not draw pairwise non-proportional forms");
}

PowerScanReport power_threshold_scan(const PowerScanOptions& options) {
  if (options.trials == 0) throw PreconditionError("power scan needs trials >= 1");
  if (options.count < 2) throw PreconditionError("power scan needs at least two forms");
  if (options.nvars < 1 || options.degree < 1)
    throw PreconditionError("power scan needs nvars >= 1 and degree >= 1");
  PowerScanReport report{.options = options, .threshold = options.count - 1};
  for (std::size_t t = 0; t < options.trials; ++t) {
    PowerInstance inst{options.nvars, options.degree,
                       random_forms(options.nvars, options.degree, options.count, options.seed, t),
                       static_cast<unsigned>(report.threshold)};
    if (power_independence(inst).independent) ++report.independent_at_threshold;
    if (!options.find_minimal) continue;

    std::optional<std::size_t> minimal;
    for (unsigned r = 1; r <= report.threshold + 1; ++r) {
      inst.exponent = r;
      const bool independent = power_independence(inst).independent;
      if (independent && !minimal) minimal = r;
      if (!independent && minimal) ++report.monotonicity_violations;
    }
    report.minimal_r.push_back(minimal.value_or(0));
  }
  return report;
}

}  // namespace nv
