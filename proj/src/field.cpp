#include "nv/field.hpp"

#include "nv/errors.hpp"
#include "nv/random.hpp"

namespace nv {

static_assert(sizeof(long) == sizeof(std::int64_t), "LP64 platform expected");

Rationals::Element Rationals::from_int(std::int64_t v) const {
  return Element(static_cast<long>(v));
}

Rationals::Element Rationals::inv(const Element& a) const {
  if (is_zero(a)) throw PreconditionError("inverse of zero");
  return Element(1) / a;
}

Rationals::Element Rationals::pow(const Element& a, std::uint64_t e) const {
  Element result(1);
  Element base = a;
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

bool is_probable_prime(std::uint64_t n) {
  mpz_class z(static_cast<unsigned long>(n));
  return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p <= (std::uint64_t{1} << 60) || p >= (std::uint64_t{1} << 63))
    throw PreconditionError("prime modulus must lie in (2^60, 2^63): " + std::to_string(p));
  if (!is_probable_prime(p))
    throw PreconditionError("modulus is not prime: " + std::to_string(p));
}

PrimeField::Element PrimeField::from_int(std::int64_t v) const {
  __int128 r = static_cast<__int128>(v) % static_cast<__int128>(p_);
  if (r < 0) r += p_;
  return static_cast<Element>(r);
}

PrimeField::Element PrimeField::from_integer(const mpz_class& v) const {
  mpz_class m;
  mpz_class p(static_cast<unsigned long>(p_));
  mpz_mod(m.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  return m.get_ui();
}

PrimeField::Element PrimeField::from_rational(const mpq_class& v) const {
  Element den = from_integer(v.get_den());
  if (den == 0) throw PreconditionError("denominator divisible by the modulus");
  return mul(from_integer(v.get_num()), inv(den));
}

PrimeField::Element PrimeField::pow(Element a, std::uint64_t e) const {
  Element result = 1;
  while (e != 0) {
    if (e & 1U) result = mul(result, a);
    e >>= 1U;
    if (e != 0) a = mul(a, a);
  }
  return result;
}

PrimeField::Element PrimeField::inv(Element a) const {
  if (a == 0) throw PreconditionError("inverse of zero");
  return pow(a, p_ - 2);
}

mpq_class PrimeField::to_rational(Element a) const {
  return mpq_class(mpz_class(static_cast<unsigned long>(a)));
}

std::uint64_t choose_prime(std::uint64_t seed) {
  constexpr std::uint64_t lo = std::uint64_t{1} << 60;
  constexpr std::uint64_t hi = std::uint64_t{1} << 62;
  Rng rng(derive_seed(seed, 0x7072696d65ULL));
  std::uniform_int_distribution<std::uint64_t> dist(lo + 1, hi - (std::uint64_t{1} << 20));
  std::uint64_t start = dist(rng);
  mpz_class z(static_cast<unsigned long>(start));
  mpz_nextprime(z.get_mpz_t(), z.get_mpz_t());
  return z.get_ui();
}

}  // namespace nv
