#include "nv/monomial.hpp"

#include "nv/errors.hpp"

namespace nv {

namespace {

void enumerate(std::size_t var, std::uint64_t remaining, Monomial& current,
               std::vector<Monomial>& out) {
  const std::size_t last = current.size() - 1;
  if (var == last) {
    current[var] = static_cast<Exponent>(remaining);
    out.push_back(current);
    current[var] = 0;
    return;
  }
  for (std::uint64_t e = remaining + 1; e-- > 0;) {
    current[var] = static_cast<Exponent>(e);
    enumerate(var + 1, remaining - e, current, out);
  }
  current[var] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::uint64_t deg) {
  if (nvars == 0) throw PreconditionError("monomials_of_degree needs nvars >= 1");
  std::vector<Monomial> out;
  Monomial current(nvars);
  enumerate(0, deg, current, out);
  return out;
}

std::string format_monomial(const Monomial& m, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += names.at(i);
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

}  // namespace nv
