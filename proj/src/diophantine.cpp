#include "plrot/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace plrot {

namespace {

bool is_square(const mpz_class& n) { return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

mpz_class isqrt(const mpz_class& n) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Drop common factors g with g | P, g | Q, g^2 | D while keeping Q | D - P^2.
void reduce(QuadraticSurd& s) {
  mpz_class g = gcd(s.P, s.Q);
  for (mpz_class f = 2; f * f <= g || f <= g; ++f) {
    if (g % f != 0) continue;
    while (g % f == 0) {
      mpz_class P = s.P / f, Q = s.Q / f;
      if (s.D % (f * f) != 0) break;
      mpz_class D = s.D / (f * f);
      if ((D - P * P) % Q != 0) break;
      s = QuadraticSurd{P, Q, D};
      g /= f;
    }
    while (g % f == 0) g /= f;
    if (f > 1000) break;
  }
}

}  // namespace

double QuadraticSurd::approx() const {
  return (P.get_d() + std::sqrt(D.get_d())) / Q.get_d();
}

bool QuadraticSurd::same_value(const QuadraticSurd& o) const {
  // P/Q + sign(Q) sqrt(D/Q^2)
  mpq_class r1(P, Q), r2(o.P, o.Q);
  r1.canonicalize();
  r2.canonicalize();
  mpq_class s1(D, Q * Q), s2(o.D, o.Q * o.Q);
  s1.canonicalize();
  s2.canonicalize();
  return r1 == r2 && s1 == s2 && sgn(Q) == sgn(o.Q);
}

QuadraticSurd make_surd(const mpz_class& P, const mpz_class& Q, const mpz_class& D) {
  if (Q == 0) throw SurdError("Q must be nonzero");
  if (sgn(D) <= 0 || is_square(D)) throw SurdError("D must be a positive nonsquare");
  QuadraticSurd s{P, Q, D};
  if ((D - P * P) % Q != 0) {
    mpz_class aq = abs(Q);
    s.P = P * aq;
    s.Q = Q * aq;
    s.D = D * Q * Q;
  }
  reduce(s);
  return s;
}

QuadraticSurd surd_from(const mpq_class& r, const mpq_class& t, const mpz_class& D) {
  if (sgn(t) == 0) throw SurdError("rational value has no surd form");
  mpz_class M = lcm(r.get_den(), t.get_den());
  mpz_class R = r.get_num() * (M / r.get_den());
  mpz_class S = t.get_num() * (M / t.get_den());
  if (S > 0) return make_surd(R, M, S * S * D);
  return make_surd(-R, -M, S * S * D);
}

QuadraticSurd surd_of(const FieldElem& x) {
  const SlopeSpec& s = x.spec();
  if (x.is_rational()) throw SurdError("rational field element");
  // alpha = (p + sqrt(p^2 + 4q)) / 2
  mpq_class r = x.a() + x.b() * mpq_class(s.p, 2);
  mpq_class t = x.b() / 2;
  r.canonicalize();
  t.canonicalize();
  return surd_from(r, t, mpz_class(static_cast<long>(s.discriminant())));
}

long CFExpansion::digit(std::size_t i) const {
  if (i < preperiod.size()) return preperiod[i];
  return period[(i - preperiod.size()) % period.size()];
}

std::vector<long> CFExpansion::digits(std::size_t n) const {
  std::vector<long> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(digit(i));
  return out;
}

CFExpansion cf_expand(const QuadraticSurd& s0) {
  QuadraticSurd s = s0;
  if ((s.D - s.P * s.P) % s.Q != 0) s = make_surd(s.P, s.Q, s.D);
  const mpz_class root = isqrt(s.D);
  std::map<std::pair<mpz_class, mpz_class>, std::size_t> seen;
  std::vector<long> digits;
  mpz_class P = s.P, Q = s.Q;
  // Reduced surds have |P| < sqrt(D), 0 < Q < 2 sqrt(D); the preperiod is short.
  const std::size_t cap = 64 + 4 * static_cast<std::size_t>(std::min(1e8, std::sqrt(s.D.get_d()) * 4.0));
  auto step = [&] {
    mpz_class a = Q > 0 ? floor_div(P + root, Q) : floor_div(P + root + 1, Q);
    if (!a.fits_slong_p()) throw SurdError("partial quotient too large");
    digits.push_back(a.get_si());
    P = a * Q - P;
    Q = (s.D - P * P) / Q;
  };
  // a0 always sits in the preperiod; cycle detection starts after it
  step();
  while (digits.size() < cap) {
    auto key = std::make_pair(P, Q);
    if (auto it = seen.find(key); it != seen.end()) {
      CFExpansion cf;
      cf.preperiod.assign(digits.begin(), digits.begin() + static_cast<long>(it->second));
      cf.period.assign(digits.begin() + static_cast<long>(it->second), digits.end());
      return cf;
    }
    seen.emplace(key, digits.size());
    step();
  }
  throw SurdError("continued fraction did not become periodic");
}

BoundedType is_bounded_type(const CFExpansion& cf) {
  BoundedType bt;
  for (std::size_t i = 0; i < cf.preperiod.size(); ++i) bt.max_quotient = std::max(bt.max_quotient, cf.preperiod[i]);
  for (long a : cf.period) bt.max_quotient = std::max(bt.max_quotient, a);
  return bt;
}

std::vector<Convergent> convergents(const CFExpansion& cf, long q_max) {
  std::vector<Convergent> out;
  mpz_class p_prev = 1, q_prev = 0, p_prev2 = 0, q_prev2 = 1;
  for (std::size_t i = 0;; ++i) {
    mpz_class a = cf.digit(i);
    mpz_class p = a * p_prev + p_prev2;
    mpz_class q = a * q_prev + q_prev2;
    if (q > q_max) break;
    out.push_back({p, q});
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
  }
  return out;
}

mpq_class approximation_quality_lower(const QuadraticSurd& s, const mpz_class& p, const mpz_class& q,
                                      const mpq_class& delta, unsigned bits) {
  if (q <= 0) throw SurdError("q must be positive");
  if (sgn(delta) < 0) throw SurdError("delta must be nonnegative");
  // |q s - p| = |A + q sqrt(D)| / |Q| with A = q P - p Q
  mpz_class A = q * s.P - p * s.Q;
  for (unsigned k = bits;; k += 64) {
    mpz_class scale = mpz_class(1) << k;
    mpz_class lo_root = isqrt(s.D * scale * scale);
    mpq_class lo(A * scale + q * lo_root, scale);
    mpq_class hi(A * scale + q * (lo_root + 1), scale);
    lo.canonicalize();
    hi.canonicalize();
    if (sgn(lo) * sgn(hi) <= 0) continue;
    mpq_class dist = (sgn(lo) > 0 ? lo : -hi) / abs(mpq_class(s.Q));
    // q^delta >= floor(root_m(q^n 2^(k m))) / 2^k for delta = n / m
    mpz_class n = delta.get_num(), m = delta.get_den();
    mpq_class qdelta(1);
    if (n != 0) {
      if (!m.fits_ulong_p() || !n.fits_ulong_p()) throw SurdError("delta too large");
      mpz_class qn;
      mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), n.get_ui());
      mpz_class pow2 = mpz_class(1) << (k * m.get_ui());
      mpz_class root;
      mpz_class radicand = qn * pow2;
      mpz_root(root.get_mpz_t(), radicand.get_mpz_t(), m.get_ui());
      qdelta = mpq_class(root, scale);
      qdelta.canonicalize();
    }
    return mpq_class(q) * qdelta * dist;
  }
}

DiophantineWitness diophantine_witness(const QuadraticSurd& s, const mpq_class& delta, long q_max) {
  if (q_max < 2) throw SurdError("q_max must be at least 2");
  CFExpansion cf = cf_expand(s);
  std::vector<Convergent> conv = convergents(cf, q_max);
  DiophantineWitness w;
  w.q_max = q_max;
  w.delta = delta;
  w.convergents_checked = conv.size();
  bool first = true;
  for (const auto& c : conv) {
    mpq_class v = approximation_quality_lower(s, c.p, c.q, delta);
    if (first || v < w.lower_bound) {
      w.lower_bound = v;
      w.p_at_min = c.p;
      w.q_at_min = c.q;
      first = false;
    }
  }
  return w;
}

bool tails_equal(const CFExpansion& a, const CFExpansion& b) {
  if (a.period.size() != b.period.size()) return false;
  const std::size_t n = a.period.size();
  for (std::size_t r = 0; r < n; ++r) {
    bool match = true;
    for (std::size_t i = 0; i < n && match; ++i) match = a.period[(i + r) % n] == b.period[i];
    if (match) return true;
  }
  return false;
}

QuadraticSurd apply_psl2(const QuadraticSurd& s, long a, long b, long c, long d) {
  if (a * d - b * c != 1) throw SurdError("matrix determinant must be 1");
  mpq_class r(s.P, s.Q), t(1, s.Q);
  r.canonicalize();
  t.canonicalize();
  mpq_class D(s.D);
  mpq_class nr = a * r + b, nt = a * t;
  mpq_class dr = c * r + d, dt = c * t;
  mpq_class norm = dr * dr - dt * dt * D;
  if (sgn(norm) == 0) throw SurdError("pole of the fractional linear map");
  mpq_class R = (nr * dr - nt * dt * D) / norm;
  mpq_class T = (nt * dr - nr * dt) / norm;
  return surd_from(R, T, s.D);
}

}  // namespace plrot
