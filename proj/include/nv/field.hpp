#pragma once

// Exact coefficient domains. Each domain is a small value object whose
// member functions implement the field operations on its Element type, so
// algorithms are written once as templates over the domain.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>

namespace nv {

class Rationals {
 public:
  using Element = mpq_class;

  // Range of the integers drawn by random(); keeps Bareiss pivots modest.
  static constexpr std::int64_t kSampleBound = 999;

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(std::int64_t v) const;
  Element from_integer(const mpz_class& v) const { return Element(v); }
  Element from_rational(const mpq_class& v) const { return v; }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const;
  Element pow(const Element& a, std::uint64_t e) const;

  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  // Exact rational value of a as a decimal fraction "p/q" or "p".
  std::string to_string(const Element& a) const { return a.get_str(); }
  mpq_class to_rational(const Element& a) const { return a; }

  template <class Rng>
  Element random(Rng& rng) const {
    std::uniform_int_distribution<std::int64_t> dist(-kSampleBound, kSampleBound);
    return from_int(dist(rng));
  }

  std::string name() const { return "rational"; }
  bool operator==(const Rationals&) const = default;
};

class PrimeField {
 public:
  using Element = std::uint64_t;

  // Throws PreconditionError unless p is a (probable) prime in (2^60, 2^63).
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const noexcept { return p_; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(std::int64_t v) const;
  Element from_integer(const mpz_class& v) const;
  // Throws PreconditionError when p divides the denominator.
  Element from_rational(const mpq_class& v) const;

  Element add(Element a, Element b) const {
    Element s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + (p_ - b); }
  Element mul(Element a, Element b) const {
    return static_cast<Element>((static_cast<unsigned __int128>(a) * b) % p_);
  }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element inv(Element a) const;
  Element pow(Element a, std::uint64_t e) const;

  bool is_zero(Element a) const { return a == 0; }
  bool equal(Element a, Element b) const { return a == b; }

  std::string to_string(Element a) const { return std::to_string(a); }
  // Canonical representative in [0, p) as a rational.
  mpq_class to_rational(Element a) const;

  template <class Rng>
  Element random(Rng& rng) const {
    std::uniform_int_distribution<std::uint64_t> dist(0, p_ - 1);
    return dist(rng);
  }

  std::string name() const { return "prime"; }
  bool operator==(const PrimeField&) const = default;

 private:
  std::uint64_t p_;
};

// Runtime description of the domain a computation runs in.
struct Domain {
  enum class Kind { Rational, Prime };

  Kind kind = Kind::Prime;
  std::uint64_t prime = 0;  // meaningful for Kind::Prime only

  static Domain rational() { return {Kind::Rational, 0}; }
  static Domain prime_field(std::uint64_t p) { return {Kind::Prime, p}; }

  std::string name() const { return kind == Kind::Rational ? "rational" : "prime"; }
  bool operator==(const Domain&) const = default;
};

// Deterministic prime in [2^60, 2^62] derived from seed.
std::uint64_t choose_prime(std::uint64_t seed);

bool is_probable_prime(std::uint64_t n);

// Calls f with the concrete field object described by domain.
template <class F>
decltype(auto) visit_domain(const Domain& domain, F&& f) {
  if (domain.kind == Domain::Kind::Rational) return f(Rationals{});
  return f(PrimeField(domain.prime));
}

}  // namespace nv
