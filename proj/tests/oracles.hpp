// Independent oracles for the unit tests: 512-bit floating evaluation and
// small random generators.

#pragma once

#include <gmpxx.h>

#include <random>

#include "plrot/field.hpp"

namespace oracle {

inline mpf_class value(const plrot::FieldElem& x, unsigned bits = 512) {
  const auto& s = x.spec();
  mpf_class d(static_cast<double>(s.discriminant()), bits);
  mpf_class root(0, bits);
  mpf_sqrt(root.get_mpf_t(), d.get_mpf_t());
  mpf_class alpha = (mpf_class(static_cast<double>(s.p), bits) + root) / 2;
  mpf_class a(x.a(), bits), b(x.b(), bits);
  return a + b * alpha;
}

inline int sign(const plrot::FieldElem& x) { return sgn(value(x)); }

// a + b alpha with integer coefficients in [-h, h].
inline plrot::FieldElem random_int_elem(const plrot::SlopeSpec& s, std::mt19937_64& rng, long h) {
  std::uniform_int_distribution<long> d(-h, h);
  return plrot::FieldElem(s, d(rng), d(rng));
}

inline plrot::FieldElem random_rational_elem(const plrot::SlopeSpec& s, std::mt19937_64& rng, long h) {
  std::uniform_int_distribution<long> d(-h, h), den(1, h);
  return plrot::FieldElem(s, mpq_class(d(rng), den(rng)), mpq_class(d(rng), den(rng)));
}

}  // namespace oracle
