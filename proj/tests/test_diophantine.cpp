#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "plrot/diophantine.hpp"

using namespace plrot;

namespace {

mpf_class surd_value(const QuadraticSurd& s, unsigned bits = 1024) {
  mpf_class d(s.D, bits), r(0, bits);
  mpf_sqrt(r.get_mpf_t(), d.get_mpf_t());
  mpf_class out(mpf_class(s.P, bits) + r, bits);
  out /= mpf_class(s.Q, bits);
  return out;
}

// Leading CF digits straight from a high-precision float.
std::vector<long> float_digits(const QuadraticSurd& s, std::size_t n) {
  mpf_class x = surd_value(s);
  std::vector<long> out;
  for (std::size_t i = 0; i < n; ++i) {
    mpf_class f(0, 1024);
    mpf_floor(f.get_mpf_t(), x.get_mpf_t());
    out.push_back(f.get_si());
    mpf_class frac(x - f, 1024);
    x = mpf_class(1, 1024) / frac;
  }
  return out;
}

bool is_square(long d) {
  long r = static_cast<long>(std::sqrt(static_cast<double>(d)));
  while (r * r > d) --r;
  while ((r + 1) * (r + 1) <= d) ++r;
  return r * r == d;
}

// min over 1 <= q <= q_max of q^(1+delta) |q s - p| with p nearest to q s.
double brute_quality(const QuadraticSurd& s, double delta, long q_max) {
  mpf_class v = surd_value(s, 512);
  double best = 1e300;
  for (long q = 1; q <= q_max; ++q) {
    mpf_class qs(v * q, 512);
    mpf_class near(0, 512);
    mpf_class half(qs + 0.5, 512);
    mpf_floor(near.get_mpf_t(), half.get_mpf_t());
    mpf_class err(qs - near, 512);
    double e = std::abs(err.get_d());
    best = std::min(best, std::pow(static_cast<double>(q), 1.0 + delta) * e);
  }
  return best;
}

}  // namespace

TEST_CASE("golden ratio and sqrt 31") {
  CFExpansion g = cf_expand(make_surd(1, 2, 5));
  CHECK(g.preperiod == std::vector<long>{1});
  CHECK(g.period == std::vector<long>{1});
  CHECK(is_bounded_type(g).bounded);
  CHECK(is_bounded_type(g).max_quotient == 1);

  CFExpansion r = cf_expand(make_surd(0, 1, 31));
  CHECK(r.preperiod == std::vector<long>{5});
  CHECK(r.period == std::vector<long>{1, 1, 3, 5, 3, 1, 1, 10});
  CHECK(is_bounded_type(r).max_quotient == 10);
}

TEST_CASE("surd validation and canonical form") {
  CHECK_THROWS_AS(make_surd(1, 0, 5), SurdError);
  CHECK_THROWS_AS(make_surd(1, 2, 9), SurdError);
  CHECK_THROWS_AS(make_surd(1, 2, -3), SurdError);
  QuadraticSurd a = make_surd(2, 4, 20);
  QuadraticSurd b = make_surd(1, 2, 5);
  CHECK(a.same_value(b));
  CHECK(std::abs(a.approx() - b.approx()) < 1e-15);
  SlopeSpec s = make_alpha(1, 1);
  CHECK(surd_of(FieldElem::alpha(s)).same_value(b));
  CHECK(cf_expand(surd_of(FieldElem(s, 2L, -1L))).digits(6) == std::vector<long>{0, 2, 1, 1, 1, 1});
}

TEST_CASE("digits agree with a high-precision float expansion") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> dd(2, 10000), pp(-60, 60);
  int tested = 0;
  while (tested < 60) {
    long D = dd(rng);
    if (is_square(D)) continue;
    long P = pp(rng);
    long N = D - P * P;
    std::vector<long> divs;
    for (long q = 1; q * q <= std::abs(N); ++q)
      if (N % q == 0) divs.insert(divs.end(), {q, -q, N / q, -N / q});
    if (divs.empty()) continue;
    long Q = divs[rng() % divs.size()];
    QuadraticSurd s = make_surd(P, Q, D);
    CFExpansion cf = cf_expand(s);
    CAPTURE(P);
    CAPTURE(Q);
    CAPTURE(D);
    CHECK(cf.digits(25) == float_digits(s, 25));
    ++tested;
  }
}

TEST_CASE("sqrt D expansions terminate with the classical period shape") {
  for (long D = 2; D <= 10000; ++D) {
    if (is_square(D)) continue;
    CFExpansion cf = cf_expand(make_surd(0, 1, D));
    REQUIRE(cf.preperiod.size() == 1);
    long a0 = cf.preperiod[0];
    REQUIRE(!cf.period.empty());
    CHECK(cf.period.back() == 2 * a0);
    for (std::size_t i = 0; i + 1 < cf.period.size(); ++i)
      CHECK(cf.period[i] == cf.period[cf.period.size() - 2 - i]);
  }
}

TEST_CASE("tails under PSL2 action") {
  QuadraticSurd s = make_surd(0, 1, 31);
  CFExpansion base = cf_expand(s);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> e(-10, 10);
  int done = 0;
  while (done < 40) {
    long a = e(rng), b = e(rng), c = e(rng), d = e(rng);
    if (a * d - b * c != 1) continue;
    QuadraticSurd t = apply_psl2(s, a, b, c, d);
    CHECK(tails_equal(base, cf_expand(t)));
    ++done;
  }
  CHECK_THROWS_AS(apply_psl2(s, 2, 0, 0, 1), SurdError);
  CHECK_FALSE(tails_equal(base, cf_expand(make_surd(1, 2, 5))));
  CFExpansion g = cf_expand(make_surd(1, 2, 5));
  CHECK(tails_equal(g, g));
}

TEST_CASE("convergents") {
  CFExpansion g = cf_expand(make_surd(1, 2, 5));
  std::vector<Convergent> c = convergents(g, 100);
  REQUIRE(c.size() >= 3);
  CHECK(c[0].p == 1);
  CHECK(c[0].q == 1);
  for (std::size_t i = 1; i < c.size(); ++i) {
    CHECK(c[i].q >= c[i - 1].q);
    if (i >= 2) CHECK(c[i].q > c[i - 1].q);
    mpz_class det = c[i].p * c[i - 1].q - c[i - 1].p * c[i].q;
    CHECK(abs(det) == 1);
  }
  CHECK(c.back().q <= 100);
}

TEST_CASE("witness against brute force") {
  std::vector<QuadraticSurd> xs{make_surd(1, 2, 5), make_surd(0, 1, 2), make_surd(0, 1, 31),
                                make_surd(3, 7, 58), make_surd(-1, 3, 13)};
  for (const auto& s : xs) {
    for (double delta : {0.0, 0.25}) {
      DiophantineWitness w = diophantine_witness(s, mpq_class(delta), 200);
      double lb = w.lower_bound.get_d();
      double bf = brute_quality(s, delta, 200);
      CAPTURE(s.D);
      CHECK(lb <= bf * (1 + 1e-12) + 1e-15);
      if (bf < 0.5) CHECK(lb == doctest::Approx(bf).epsilon(1e-9));
    }
  }
  CHECK_THROWS(diophantine_witness(xs[0], 0, 1));
}

TEST_CASE("witness is monotone in the search bound") {
  QuadraticSurd s = make_surd(0, 1, 31);
  mpq_class prev = diophantine_witness(s, 0, 2).lower_bound;
  for (long qm : {5L, 20L, 100L, 1000L, 100000L}) {
    mpq_class cur = diophantine_witness(s, 0, qm).lower_bound;
    CHECK(cur <= prev);
    prev = cur;
  }
}

TEST_CASE("golden witness value") {
  DiophantineWitness w = diophantine_witness(make_surd(1, 2, 5), 0, 100);
  CHECK(w.p_at_min == 2);
  CHECK(w.q_at_min == 1);
  CHECK(w.lower_bound.get_d() == doctest::Approx(0.381966).epsilon(1e-5));
}
