#include "plrot/field.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

namespace plrot {

namespace {

bool is_perfect_square(std::int64_t n) {
  if (n < 0) return false;
  auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n))));
  for (std::int64_t c = std::max<std::int64_t>(0, r - 2); c <= r + 2; ++c)
    if (c * c == n) return true;
  return false;
}

int sgn_of(const mpq_class& x) { return sgn(x); }

}  // namespace

double SlopeSpec::approx() const {
  return (static_cast<double>(p) + std::sqrt(static_cast<double>(discriminant()))) / 2.0;
}

std::int64_t SlopeSpec::ideal_modulus() const {
  std::int64_t m = p + q - 1;
  return m < 0 ? -m : m;
}

SlopeSpec make_alpha(std::int64_t p, std::int64_t q) {
  if (q == 0) throw FieldError("q must be nonzero");
  if (std::abs(p) > (1 << 20) || std::abs(q) > (1 << 20))
    throw FieldError("|p|, |q| limited to 2^20");
  std::int64_t disc = p * p + 4 * q;
  if (disc <= 0) throw FieldError("p^2 + 4q <= 0: no real root");
  if (is_perfect_square(disc))
    throw FieldError("discriminant " + std::to_string(disc) +
                     " is a perfect square: alpha is rational");
  // alpha > 1 iff 1 lies left of the larger root: either 1 < p/2 or
  // f(1) = 1 - p - q < 0.
  bool above_one = (2 < p) || (1 - p - q < 0);
  if (!above_one) throw FieldError("larger root of x^2 = px + q is not > 1");
  return SlopeSpec{p, q, q == 1 || q == -1};
}

FieldElem::FieldElem(const SlopeSpec& spec, mpq_class a, mpq_class b)
    : spec_(spec), a_(std::move(a)), b_(std::move(b)) {
  a_.canonicalize();
  b_.canonicalize();
}

FieldElem FieldElem::rational(const SlopeSpec& spec, long num, long den) {
  if (den == 0) throw FieldError("zero denominator");
  mpq_class r(num, den);
  r.canonicalize();
  return FieldElem(spec, r, mpq_class(0));
}

void FieldElem::check_same(const FieldElem& y) const {
  if (!(spec_ == y.spec_)) throw FieldError("field elements over different alpha");
}

FieldElem& FieldElem::operator+=(const FieldElem& y) {
  check_same(y);
  a_ += y.a_;
  b_ += y.b_;
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& y) {
  check_same(y);
  a_ -= y.a_;
  b_ -= y.b_;
  return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& y) {
  check_same(y);
  // (a1 + b1 x)(a2 + b2 x) with x^2 = p x + q
  mpq_class bb = b_ * y.b_;
  mpq_class na = a_ * y.a_ + bb * spec_.q;
  mpq_class nb = a_ * y.b_ + b_ * y.a_ + bb * spec_.p;
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

FieldElem& FieldElem::operator/=(const FieldElem& y) {
  return *this *= y.inverse();
}

FieldElem FieldElem::operator-() const { return FieldElem(spec_, -a_, -b_); }

FieldElem FieldElem::conjugate() const {
  return FieldElem(spec_, a_ + b_ * spec_.p, -b_);
}

mpq_class FieldElem::norm() const {
  return a_ * a_ + a_ * b_ * spec_.p - b_ * b_ * spec_.q;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw FieldError("inverse of zero");
  mpq_class n = norm();
  // n != 0 because alpha is irrational
  FieldElem c = conjugate();
  return FieldElem(spec_, c.a_ / n, c.b_ / n);
}

Sign FieldElem::sign() const {
  int sb = sgn_of(b_);
  if (sb == 0) {
    int sa = sgn_of(a_);
    return sa < 0 ? Sign::negative : (sa > 0 ? Sign::positive : Sign::zero);
  }
  // a + b alpha = b (alpha - r), r = -a/b
  mpq_class r = -a_ / b_;
  int alpha_minus_r;
  if (2 * r < spec_.p) {
    alpha_minus_r = 1;
  } else {
    mpq_class f = r * r - r * spec_.p - spec_.q;
    int sf = sgn_of(f);
    if (sf == 0) throw FieldError("rational root of an irreducible quadratic");
    alpha_minus_r = sf < 0 ? 1 : -1;
  }
  return (sb * alpha_minus_r) > 0 ? Sign::positive : Sign::negative;
}

std::strong_ordering operator<=>(const FieldElem& x, const FieldElem& y) {
  switch ((x - y).sign()) {
    case Sign::negative: return std::strong_ordering::less;
    case Sign::zero: return std::strong_ordering::equal;
    default: return std::strong_ordering::greater;
  }
}

double FieldElem::approx() const {
  return a_.get_d() + b_.get_d() * spec_.approx();
}

mpz_class FieldElem::floor() const {
  double d = approx();
  mpz_class n(std::floor(d));
  while (*this < FieldElem(spec_, mpq_class(n))) n -= 1;
  while (*this >= FieldElem(spec_, mpq_class(n + 1))) n += 1;
  return n;
}

std::string FieldElem::to_string() const {
  std::ostringstream os;
  if (sgn(b_) == 0) {
    os << a_.get_str();
  } else if (sgn(a_) == 0) {
    os << b_.get_str() << "*a";
  } else {
    os << a_.get_str() << (sgn(b_) < 0 ? " - " : " + ") << mpq_class(abs(b_)).get_str() << "*a";
  }
  return os.str();
}

FieldElem power_alpha(const SlopeSpec& spec, std::int64_t k) {
  using Key = std::tuple<std::int64_t, std::int64_t, std::int64_t>;
  thread_local std::map<Key, FieldElem> cache;
  Key key{spec.p, spec.q, k};
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  FieldElem base = k >= 0 ? FieldElem::alpha(spec) : FieldElem::alpha(spec).inverse();
  std::int64_t e = k >= 0 ? k : -k;
  FieldElem result(spec, 1L);
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  if (cache.size() < 4096) cache.emplace(key, result);
  return result;
}

namespace {

// Denominator only has prime factors dividing |q|.
bool q_smooth(mpz_class den, const mpz_class& absq) {
  if (den == 1) return true;
  if (absq == 1) return false;
  for (;;) {
    mpz_class g = gcd(den, absq);
    if (g == 1) return den == 1;
    while (den % g == 0) den /= g;
  }
}

// Residue of n/d mod m, d invertible mod m.
mpz_class rational_mod(const mpq_class& x, const mpz_class& m) {
  mpz_class d = x.get_den();
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t()) == 0)
    throw FieldError("denominator not invertible modulo p + q - 1");
  mpz_class r = (x.get_num() * inv) % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace

bool in_ring_A(const FieldElem& x) {
  if (x.spec().unit_case)
    return x.a().get_den() == 1 && x.b().get_den() == 1;
  mpz_class absq(static_cast<long>(std::abs(x.spec().q)));
  return q_smooth(x.a().get_den(), absq) && q_smooth(x.b().get_den(), absq);
}

CongruenceClass evaluate_at_one(const FieldElem& x) {
  if (!in_ring_A(x)) throw FieldError("element outside A");
  const auto& s = x.spec();
  CongruenceClass c;
  c.modulus = s.ideal_modulus();
  mpq_class v = x.a() + x.b();
  if (c.modulus == 0) {
    if (v.get_den() != 1) throw FieldError("non-integral image under alpha -> 1");
    c.residue = v.get_num();
    return c;
  }
  if (std::gcd(s.q, c.modulus) != 1) throw FieldError("gcd(q, p + q - 1) != 1");
  c.residue = rational_mod(v, mpz_class(static_cast<long>(c.modulus)));
  return c;
}

bool congruent_mod_ideal(const FieldElem& x, const FieldElem& y) {
  if (!in_ring_A(x) || !in_ring_A(y)) throw FieldError("element outside A");
  const auto& s = x.spec();
  FieldElem d = x - y;
  std::int64_t m = s.ideal_modulus();
  if (m != 0 && std::gcd(s.q, m) != 1) {
    if (brute_force_in_ideal(d, 100, 20).found) return true;
    throw FieldError("gcd(q, p + q - 1) != 1 and no ideal witness found up to height 100");
  }
  CongruenceClass c = evaluate_at_one(d);
  return c.residue == 0;
}

IdealSearch brute_force_in_ideal(const FieldElem& x, long height, long depth) {
  const auto& s = x.spec();
  IdealSearch out;
  for (long t = 0; t <= depth; ++t) {
    // (alpha - 1)(u + v alpha) = (-u + v q) + (u + v (p - 1)) alpha must equal x alpha^t
    FieldElem target = x * power_alpha(s, t);
    if (target.a().get_den() != 1 || target.b().get_den() != 1) continue;
    for (long v = -height; v <= height; ++v) {
      mpz_class u = target.b().get_num() - mpz_class(v) * (s.p - 1);
      if (abs(u) > height) continue;
      if (-u + mpz_class(v) * s.q == target.a().get_num()) {
        out.found = true;
        out.u = u.get_si();
        out.v = v;
        out.t = t;
        return out;
      }
    }
  }
  return out;
}

}  // namespace plrot
