// Exact arithmetic in Q(alpha) for a quadratic irrational alpha > 1 with
// alpha^2 = p*alpha + q.

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace plrot {

class FieldError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct SlopeSpec {
  std::int64_t p = 1;
  std::int64_t q = 1;
  bool unit_case = true;

  std::int64_t discriminant() const { return p * p + 4 * q; }
  // Decimal approximation of the larger root; display only.
  double approx() const;
  // |p + q - 1|, the order of A / (alpha - 1)A in the unit case.
  std::int64_t ideal_modulus() const;

  friend bool operator==(const SlopeSpec& x, const SlopeSpec& y) {
    return x.p == y.p && x.q == y.q;
  }
};

// Validates and builds the slope data. Throws FieldError on a rational,
// complex or <= 1 root, or on q == 0.
SlopeSpec make_alpha(std::int64_t p, std::int64_t q);

enum class Sign { negative = -1, zero = 0, positive = 1 };

/// Element a + b*alpha of Q(alpha), with a, b exact rationals.
class FieldElem {
 public:
  explicit FieldElem(const SlopeSpec& spec) : spec_(spec) {}
  FieldElem(const SlopeSpec& spec, mpq_class a, mpq_class b = 0);
  FieldElem(const SlopeSpec& spec, long a, long b = 0)
      : FieldElem(spec, mpq_class(a), mpq_class(b)) {}

  static FieldElem alpha(const SlopeSpec& spec) { return {spec, 0L, 1L}; }
  static FieldElem rational(const SlopeSpec& spec, long num, long den);

  const mpq_class& a() const { return a_; }
  const mpq_class& b() const { return b_; }
  const SlopeSpec& spec() const { return spec_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  FieldElem& operator+=(const FieldElem& y);
  FieldElem& operator-=(const FieldElem& y);
  FieldElem& operator*=(const FieldElem& y);
  FieldElem& operator/=(const FieldElem& y);

  friend FieldElem operator+(FieldElem x, const FieldElem& y) { return x += y; }
  friend FieldElem operator-(FieldElem x, const FieldElem& y) { return x -= y; }
  friend FieldElem operator*(FieldElem x, const FieldElem& y) { return x *= y; }
  friend FieldElem operator/(FieldElem x, const FieldElem& y) { return x /= y; }
  FieldElem operator-() const;

  friend FieldElem operator+(FieldElem x, long n) { x.a_ += n; return x; }
  friend FieldElem operator-(FieldElem x, long n) { x.a_ -= n; return x; }
  friend FieldElem operator*(FieldElem x, long n) {
    x.a_ *= n;
    x.b_ *= n;
    return x;
  }

  // Galois conjugate, alpha -> p - alpha.
  FieldElem conjugate() const;
  // N(a + b alpha) = a^2 + a b p - b^2 q.
  mpq_class norm() const;
  FieldElem inverse() const;

  // Exact sign, integer arithmetic only.
  Sign sign() const;
  mpz_class floor() const;
  double approx() const;
  std::string to_string() const;

  friend bool operator==(const FieldElem& x, const FieldElem& y) {
    return x.spec_ == y.spec_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const FieldElem& x, const FieldElem& y);

 private:
  void check_same(const FieldElem& y) const;

  SlopeSpec spec_;
  mpq_class a_;
  mpq_class b_;
};

FieldElem power_alpha(const SlopeSpec& spec, std::int64_t k);

// Membership in the stored representation of A: Z[alpha] when |q| = 1,
// Z[alpha][1/q] otherwise (a superset of Z[alpha, alpha^-1]).
bool in_ring_A(const FieldElem& x);

struct CongruenceClass {
  std::int64_t modulus = 0;
  mpz_class residue;
};

// Image of x under alpha -> 1 in Z/mZ, m = |p + q - 1|; m == 0 keeps the
// integer. Requires x in A and gcd(q, m) = 1.
CongruenceClass evaluate_at_one(const FieldElem& x);

// x == y mod (alpha - 1)A. Falls back to brute_force_in_ideal with
// height 100 and depth 20 when gcd(q, m) != 1, and throws FieldError if the
// search cannot decide.
bool congruent_mod_ideal(const FieldElem& x, const FieldElem& y);

struct IdealSearch {
  bool found = false;
  long u = 0;
  long v = 0;
  long t = 0;
};

// Search for e = (u + v alpha) alpha^-t, |u|,|v| <= height, 0 <= t <= depth,
// with (alpha - 1) e = x. Sound for membership only.
IdealSearch brute_force_in_ideal(const FieldElem& x, long height, long depth);

}  // namespace plrot
