// Continued fractions of quadratic surds, bounded type, D_delta witnesses and
// the PSL(2, Z) action.

#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <vector>

#include "plrot/field.hpp"

namespace plrot {

class SurdError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// (P + sqrt(D)) / Q with D > 0 not a square and Q | D - P^2.
struct QuadraticSurd {
  mpz_class P;
  mpz_class Q;
  mpz_class D;

  double approx() const;
  // Same real number, possibly different (P, Q, D).
  bool same_value(const QuadraticSurd& other) const;
  friend bool operator==(const QuadraticSurd&, const QuadraticSurd&) = default;
};

QuadraticSurd make_surd(const mpz_class& P, const mpz_class& Q, const mpz_class& D);
// r + t sqrt(D), t != 0.
QuadraticSurd surd_from(const mpq_class& r, const mpq_class& t, const mpz_class& D);
QuadraticSurd surd_of(const FieldElem& x);

struct CFExpansion {
  std::vector<long> preperiod;  // a0 first, always present
  std::vector<long> period;     // minimal, nonempty

  long digit(std::size_t i) const;
  std::vector<long> digits(std::size_t n) const;
  friend bool operator==(const CFExpansion&, const CFExpansion&) = default;
};

CFExpansion cf_expand(const QuadraticSurd& s);

struct BoundedType {
  bool bounded = true;
  long max_quotient = 0;  // over preperiod and period, a0 included
};

BoundedType is_bounded_type(const CFExpansion& cf);

struct Convergent {
  mpz_class p;
  mpz_class q;
};

// Convergents p_n / q_n with q_n <= q_max, in order.
std::vector<Convergent> convergents(const CFExpansion& cf, long q_max);

// Rational lower bound for q^(1+delta) |q s - p|, to about 2^-bits relative.
mpq_class approximation_quality_lower(const QuadraticSurd& s, const mpz_class& p, const mpz_class& q,
                                      const mpq_class& delta, unsigned bits = 160);

struct DiophantineWitness {
  mpq_class lower_bound;  // min over convergents with q <= q_max
  mpz_class p_at_min;
  mpz_class q_at_min;
  long q_max = 0;
  mpq_class delta;
  std::size_t convergents_checked = 0;
};

// Certifies |q s - p| >= C q^(-1-delta) on q <= q_max only; bounded type
// extends positivity of the infimum to all q.
DiophantineWitness diophantine_witness(const QuadraticSurd& s, const mpq_class& delta, long q_max);

// Eventually periodic tails coincide up to a finite shift.
bool tails_equal(const CFExpansion& a, const CFExpansion& b);

// (a s + b) / (c s + d) with ad - bc = 1.
QuadraticSurd apply_psl2(const QuadraticSurd& s, long a, long b, long c, long d);

}  // namespace plrot
