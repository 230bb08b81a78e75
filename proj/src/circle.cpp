#include "plrot/circle.hpp"

#include <cmath>
#include <numeric>

namespace plrot {

CircleLift::CircleLift(PLMap base) : base_(std::move(base)) {
  const SlopeSpec& s = base_.spec();
  if (base_.lo() != FieldElem(s) || base_.hi() != FieldElem(s, 1L))
    throw CircleError("lift base must be defined on [0, 1]");
  if (base_.image_hi() - base_.image_lo() != FieldElem(s, 1L))
    throw CircleError("lift is not of degree one: F(1) != F(0) + 1");
}

CircleLift CircleLift::rotation(const FieldElem& shift) {
  const SlopeSpec& s = shift.spec();
  return CircleLift(PLMap::translation(FieldElem(s), FieldElem(s, 1L), shift));
}

FieldElem CircleLift::operator()(const FieldElem& t) const {
  mpz_class n = t.floor();
  FieldElem shift(spec(), mpq_class(n));
  return base_(t - shift) + shift;
}

PLMap CircleLift::window(const FieldElem& s) const {
  mpz_class n = s.floor();
  FieldElem lo(spec(), mpq_class(n));
  PLMap first = base_.shifted(lo);
  if (s == lo) return first;
  PLMap both = concat(first, base_.shifted(lo + 1));
  return both.restrict(s, s + 1);
}

CircleLift CircleLift::translated(long n) const {
  const SlopeSpec& s = spec();
  std::vector<Piece> pieces = base_.pieces();
  for (auto& pc : pieces) pc.b = pc.b + n;
  return CircleLift(PLMap(FieldElem(s), FieldElem(s, 1L), std::move(pieces)));
}

CircleLift compose(const CircleLift& f, const CircleLift& g) {
  PLMap outer = f.window(g.base().image_lo());
  return CircleLift(compose(outer, g.base()));
}

CircleLift iterate(const CircleLift& f, long n, const IterateOptions& opts) {
  if (n < 0) throw CircleError("iterate: negative power");
  const SlopeSpec& s = f.spec();
  CircleLift result(PLMap::identity(FieldElem(s), FieldElem(s, 1L)));
  CircleLift power = f;
  auto check = [&](const CircleLift& c) {
    if (c.size() > opts.piece_cap)
      throw CircleError("iterate: piece count " + std::to_string(c.size()) + " exceeds cap " +
                        std::to_string(opts.piece_cap));
  };
  while (n > 0) {
    if (n & 1) {
      result = compose(result, power);
      check(result);
    }
    n >>= 1;
    if (n > 0) {
      power = compose(power, power);
      check(power);
    }
  }
  return result;
}

Comparison compare_rotation(const CircleLift& f, long p, long q, const IterateOptions& opts) {
  if (q <= 0) throw CircleError("compare_rotation: q must be positive");
  if (std::gcd(p, q) != 1) throw CircleError("compare_rotation: p/q not in lowest terms");
  CircleLift g = iterate(f, q, opts);
  const PLMap& base = g.base();
  const SlopeSpec& s = f.spec();

  // Test points: every breakpoint of G on [0, 1] plus the seam.
  std::vector<FieldElem> ts;
  ts.reserve(base.size() + 1);
  for (const auto& pc : base.pieces()) ts.push_back(pc.left);
  ts.push_back(base.hi());

  Comparison out;
  out.pieces = base.size();
  std::vector<Sign> signs;
  signs.reserve(ts.size());
  bool any_neg = false, any_pos = false;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    Sign sg = (base(ts[i]) - ts[i] - p).sign();
    signs.push_back(sg);
    if (sg == Sign::zero) {
      out.order = Order::equal;
      out.witness = ts[i];
      return out;
    }
    (sg == Sign::negative ? any_neg : any_pos) = true;
  }
  if (!any_pos) {
    out.order = Order::less;
    return out;
  }
  if (!any_neg) {
    out.order = Order::greater;
    return out;
  }
  // Sign change inside piece i: solve alpha^k t + b = t + p.
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (signs[i] == signs[i + 1]) continue;
    const Piece& pc = base.pieces()[i];
    FieldElem t = (FieldElem(s, p) - pc.b) / (power_alpha(s, pc.k) - 1);
    out.order = Order::equal;
    out.witness = t;
    return out;
  }
  throw CircleError("compare_rotation: inconsistent signs");
}

namespace {

std::vector<long> rational_cf(long num, long den) {
  std::vector<long> out;
  while (den != 0) {
    long a = num / den;
    if (num % den != 0 && (num < 0) != (den < 0)) --a;
    out.push_back(a);
    long r = num - a * den;
    num = den;
    den = r;
  }
  return out;
}

}  // namespace

RotationNumberResult rotation_number_cf(const CircleLift& f, int depth, const IterateOptions& opts) {
  if (depth < 1) throw CircleError("rotation_number_cf: depth must be positive");
  RotationNumberResult res;
  auto rational_hit = [&](Fraction frac, const Comparison& c) {
    res.kind = RotationNumberResult::Kind::rational;
    res.value = frac;
    res.lower = frac;
    res.upper = frac;
    res.witness = c.witness;
    res.digits = rational_cf(frac.num, frac.den);
    return res;
  };

  long n = f(FieldElem(f.spec())).floor().get_si();
  for (;;) {
    Comparison c = compare_rotation(f, n, 1, opts);
    ++res.comparisons;
    if (c.order == Order::equal) {
      res.integer_part = n;
      return rational_hit(Fraction{0, 1}, c);
    }
    if (c.order == Order::less) {
      --n;
      continue;
    }
    Comparison c2 = compare_rotation(f, n + 1, 1, opts);
    ++res.comparisons;
    if (c2.order == Order::equal) {
      res.integer_part = n + 1;
      return rational_hit(Fraction{0, 1}, c2);
    }
    if (c2.order == Order::less) break;
    ++n;
  }
  res.integer_part = n;
  CircleLift g = f.translated(-n);

  Fraction lo{0, 1}, hi{1, 1};
  res.digits = {0};
  bool first = true;
  bool run_right = false;  // the first run heads left, toward 0
  long run_len = 0;
  while (static_cast<int>(res.digits.size()) < depth) {
    Fraction med{lo.num + hi.num, lo.den + hi.den};
    Comparison c = compare_rotation(g, med.num, med.den, opts);
    ++res.comparisons;
    if (c.order == Order::equal) return rational_hit(med, c);
    bool right = c.order == Order::greater;
    if (right == run_right) {
      ++run_len;
    } else {
      res.digits.push_back(first ? run_len + 1 : run_len);
      first = false;
      run_right = right;
      run_len = 1;
    }
    (right ? lo : hi) = med;
  }
  res.lower = lo;
  res.upper = hi;
  res.value = lo;
  return res;
}

OrbitEstimate rotation_number_orbit(const CircleLift& f, long n, const FieldElem& x0,
                                    std::vector<std::pair<long, double>>* samples) {
  if (n <= 0) throw CircleError("rotation_number_orbit: n must be positive");
  FieldElem x = x0;
  if (samples) samples->emplace_back(0, x.approx());
  for (long i = 1; i <= n; ++i) {
    x = f(x);
    if (samples) samples->emplace_back(i, x.approx());
  }
  OrbitEstimate est;
  est.n = n;
  est.translation = (x - x0).approx() / static_cast<double>(n);
  est.rotation = est.translation - std::floor(est.translation);
  est.error_bound = 1.0 / static_cast<double>(n);
  return est;
}

ClassPCertificate class_P_certificate(const CircleLift& f) {
  const auto& pcs = f.base().pieces();
  long seam = std::labs(pcs.front().k - pcs.back().k);
  return ClassPCertificate{true, variation_log_slope(f.base()) + seam};
}

}  // namespace plrot
