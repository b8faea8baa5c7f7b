#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "nv/architecture.hpp"
#include "nv/field.hpp"
#include "nv/random.hpp"
#include "nv/sparse_poly.hpp"

namespace nvtest {

// Small random rational p/q with |p| <= 20, 1 <= q <= 5.
inline mpq_class small_rational(nv::Rng& rng, bool nonzero = false) {
  std::uniform_int_distribution<int> num(-20, 20), den(1, 5);
  while (true) {
    mpq_class v(num(rng), den(rng));
    v.canonicalize();
    if (!nonzero || v != 0) return v;
  }
}

template <class Field>
typename Field::Element random_element(const Field& f, nv::Rng& rng) {
  if constexpr (std::is_same_v<Field, nv::Rationals>)
    return small_rational(rng);
  else
    return f.random(rng);
}

// Up to max_terms terms of degree <= max_deg.
template <class Field>
nv::SparsePoly<Field> random_poly(const nv::RingPtr<Field>& ring, nv::Rng& rng,
                                  int max_terms = 5, int max_deg = 3) {
  std::uniform_int_distribution<int> terms(0, max_terms), exp(0, max_deg);
  nv::SparsePoly<Field> p(ring);
  const int n = terms(rng);
  for (int t = 0; t < n; ++t) {
    nv::Monomial m(ring->nvars());
    for (std::size_t i = 0; i < ring->nvars(); ++i) m[i] = exp(rng);
    p.add_term(m, random_element(ring->field(), rng));
  }
  return p;
}

// Every architecture with L <= max_depth, n_0 in [2, max_width], other
// widths in [1, max_width], degrees in [2, max_degree].
inline std::vector<nv::Architecture> small_grid(unsigned max_depth, unsigned max_width,
                                                unsigned max_degree, unsigned max_output) {
  std::vector<nv::Architecture> out;
  std::vector<std::vector<unsigned>> widths_list{{}};
  for (unsigned L = 1; L <= max_depth; ++L) {
    std::vector<std::vector<unsigned>> ws;
    std::function<void(std::vector<unsigned>)> rec = [&](std::vector<unsigned> w) {
      if (w.size() == L + 1) {
        ws.push_back(w);
        return;
      }
      const unsigned lo = w.empty() ? 2 : 1;
      const unsigned hi = w.size() == L ? max_output : max_width;
      for (unsigned v = lo; v <= hi; ++v) {
        auto next = w;
        next.push_back(v);
        rec(next);
      }
    };
    rec({});
    std::vector<std::vector<unsigned>> ds{{}};
    for (unsigned i = 1; i < L; ++i) {
      std::vector<std::vector<unsigned>> next;
      for (const auto& d : ds)
        for (unsigned v = 2; v <= max_degree; ++v) {
          auto e = d;
          e.push_back(v);
          next.push_back(e);
        }
      ds = next;
    }
    for (const auto& w : ws)
      for (const auto& d : ds) out.push_back(nv::Architecture::validate(w, d));
  }
  return out;
}

}  // namespace nvtest
