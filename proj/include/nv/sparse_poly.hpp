#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nv/errors.hpp"
#include "nv/monomial.hpp"

namespace nv {

// Coefficient domain plus an ordered list of named variables.
template <class Field>
class PolyRing {
 public:
  PolyRing(Field field, std::vector<std::string> names)
      : field_(std::move(field)), names_(std::move(names)) {}

  const Field& field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }

  std::size_t index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    throw PreconditionError("unknown variable: " + name);
  }

 private:
  Field field_;
  std::vector<std::string> names_;
};

template <class Field>
using RingPtr = std::shared_ptr<const PolyRing<Field>>;

template <class Field>
RingPtr<Field> make_ring(Field field, std::vector<std::string> names) {
  return std::make_shared<const PolyRing<Field>>(std::move(field), std::move(names));
}

// Sparse multivariate polynomial. Terms are kept in lex-descending order and
// zero coefficients are never stored, so equality is term-map equality.
template <class Field>
class SparsePoly {
 public:
  using Element = typename Field::Element;
  using TermMap = std::map<Monomial, Element, std::greater<>>;

  explicit SparsePoly(RingPtr<Field> ring) : ring_(std::move(ring)) {}

  static SparsePoly constant(RingPtr<Field> ring, const Element& c) {
    SparsePoly p(std::move(ring));
    p.add_term(Monomial(p.ring_->nvars()), c);
    return p;
  }
  static SparsePoly variable(RingPtr<Field> ring, std::size_t var) {
    SparsePoly p(std::move(ring));
    Monomial m(p.ring_->nvars());
    m[var] = 1;
    p.add_term(m, p.field().one());
    return p;
  }

  const RingPtr<Field>& ring() const noexcept { return ring_; }
  const Field& field() const noexcept { return ring_->field(); }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t num_terms() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    const std::uint64_t d = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_)
      if (m.degree() != d) return false;
    return true;
  }

  Element coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? field().zero() : it->second;
  }

  void add_term(const Monomial& m, const Element& c) {
    const Field& f = field();
    if (f.is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second = f.add(it->second, c);
    if (f.is_zero(it->second)) terms_.erase(it);
  }

  SparsePoly& operator+=(const SparsePoly& o) {
    check_ring(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  SparsePoly& operator-=(const SparsePoly& o) {
    check_ring(o);
    for (const auto& [m, c] : o.terms_) add_term(m, field().neg(c));
    return *this;
  }
  SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }

  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator-(const SparsePoly& a) {
    SparsePoly out(a.ring_);
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, a.field().neg(c));
    return out;
  }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    a.check_ring(b);
    const Field& f = a.field();
    SparsePoly out(a.ring_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, f.mul(ca, cb));
    return out;
  }

  SparsePoly scaled(const Element& s) const {
    SparsePoly out(ring_);
    for (const auto& [m, c] : terms_) out.add_term(m, field().mul(c, s));
    return out;
  }

  bool operator==(const SparsePoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto it = o.terms_.begin();
    for (const auto& [m, c] : terms_) {
      if (!(m == it->first) || !field().equal(c, it->second)) return false;
      ++it;
    }
    return true;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      std::string coeff = field().to_string(c);
      bool negative = !coeff.empty() && coeff[0] == '-';
      if (negative) coeff.erase(0, 1);
      if (out.empty())
        out += negative ? "-" : "";
      else
        out += negative ? " - " : " + ";
      if (m.is_constant()) {
        out += coeff;
      } else {
        if (coeff != "1") out += coeff + "*";
        out += format_monomial(m, ring_->names());
      }
    }
    return out;
  }

 private:
  void check_ring(const SparsePoly& o) const {
    if (ring_ != o.ring_ && ring_->names() != o.ring_->names())
      throw PreconditionError("polynomials belong to different rings");
  }

  RingPtr<Field> ring_;
  TermMap terms_;
};

template <class Field>
SparsePoly<Field> poly_pow(const SparsePoly<Field>& p, std::uint64_t e) {
  SparsePoly<Field> result = SparsePoly<Field>::constant(p.ring(), p.field().one());
  for (std::uint64_t i = 0; i < e; ++i) result = result * p;
  return result;
}

template <class Field>
SparsePoly<Field> poly_partial(const SparsePoly<Field>& p, std::size_t var) {
  if (var >= p.ring()->nvars()) throw PreconditionError("variable index out of range");
  const Field& f = p.field();
  SparsePoly<Field> out(p.ring());
  for (const auto& [m, c] : p.terms()) {
    if (m[var] == 0) continue;
    Monomial dm = m;
    dm[var] -= 1;
    out.add_term(dm, f.mul(c, f.from_int(m[var])));
  }
  return out;
}

// Value of p at point, where point[i] is assigned to variable i.
template <class Field>
typename Field::Element poly_eval(const SparsePoly<Field>& p,
                                  std::span<const typename Field::Element> point) {
  if (point.size() != p.ring()->nvars())
    throw PreconditionError("evaluation point has wrong number of coordinates");
  const Field& f = p.field();
  typename Field::Element acc = f.zero();
  for (const auto& [m, c] : p.terms()) {
    typename Field::Element term = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) term = f.mul(term, f.pow(point[i], m[i]));
    acc = f.add(acc, term);
  }
  return acc;
}

// p with variable var replaced by the constant value.
template <class Field>
SparsePoly<Field> poly_substitute(const SparsePoly<Field>& p, std::size_t var,
                                  const typename Field::Element& value) {
  const Field& f = p.field();
  SparsePoly<Field> out(p.ring());
  for (const auto& [m, c] : p.terms()) {
    Monomial rest = m;
    rest[var] = 0;
    out.add_term(rest, f.mul(c, f.pow(value, m[var])));
  }
  return out;
}

// Common degree of every term in the variables selected by in_block, or
// nullopt if the terms disagree. The zero polynomial reports 0.
template <class Field, class Pred>
std::optional<std::uint64_t> block_degree(const SparsePoly<Field>& p, Pred in_block) {
  std::optional<std::uint64_t> deg;
  for (const auto& [m, c] : p.terms()) {
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (in_block(i)) d += m[i];
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg.value_or(0);
}

// Reduces an integer-coefficient polynomial into another domain, mapping
// variables by position.
template <class To, class From>
SparsePoly<To> map_coefficients(const SparsePoly<From>& p, RingPtr<To> target) {
  SparsePoly<To> out(std::move(target));
  for (const auto& [m, c] : p.terms())
    out.add_term(m, out.field().from_rational(p.field().to_rational(c)));
  return out;
}

}  // namespace nv
