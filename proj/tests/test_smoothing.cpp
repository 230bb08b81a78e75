#include <doctest.h>

#include <cmath>
#include <random>

#include "plrot/bieri_strebel.hpp"
#include "plrot/smoothing.hpp"

using namespace plrot;

namespace {

// Exponent of the slope of f just right (dir > 0) or left of t, from an exact
// difference quotient over a tiny step.
long slope_exponent(const PLMap& f, const FieldElem& t, int dir) {
  const SlopeSpec& s = f.spec();
  FieldElem h = power_alpha(s, -40);
  FieldElem q = dir > 0 ? (f(t + h) - f(t)) / h : (f(t) - f(t - h)) / h;
  for (long k = -60; k <= 60; ++k)
    if (q == power_alpha(s, k)) return k;
  FAIL("difference quotient is not a power of alpha");
  return 0;
}

long jump_oracle(const LocalRotation& lr) {
  FieldElem gy = lr.g(lr.y), fy = lr.f(lr.y);
  return slope_exponent(lr.f, gy, 1) - slope_exponent(lr.g, fy, -1) + slope_exponent(lr.g, lr.y, 1) -
         slope_exponent(lr.f, lr.y, -1);
}

PiecewiseSmoothMap rotation_map(double beta) {
  return PiecewiseSmoothMap::affine(0.0, 1.0, 1.0, beta);
}

}  // namespace

TEST_CASE("nonlinearity of polynomials") {
  PiecewiseSmoothMap h({0.0, 1.0}, {Poly{0.0, {0.0, 1.0, 1.0}}});  // t + t^2
  for (double t : {0.1, 0.3, 0.77}) CHECK(nonlinearity(h, t) == doctest::Approx(2.0 / (1.0 + 2.0 * t)));
  PiecewiseSmoothMap a = PiecewiseSmoothMap::affine(0.0, 2.0, 3.0, 1.0);
  CHECK(nonlinearity(a, 0.5) == 0.0);
  PiecewiseSmoothMap two({0.0, 0.5, 1.0}, {Poly{0.0, {0.0, 0.5}}, Poly{0.5, {0.25, 1.5}}});
  CHECK_THROWS_AS(nonlinearity(two, 0.5), SmoothingError);
  CHECK(nonlinearity(two, 0.5, Side::left) == 0.0);
  CHECK(two.derivative(0.5, Side::left) == 0.5);
  CHECK(two.derivative(0.5, Side::right) == 1.5);
}

TEST_CASE("map validation") {
  CHECK_THROWS_AS(PiecewiseSmoothMap({0.0, 1.0}, {Poly{0.0, {0.0, -1.0}}}), SmoothingError);
  CHECK_THROWS_AS(PiecewiseSmoothMap({0.0, 0.5, 1.0}, {Poly{0.0, {0.0, 1.0}}, Poly{0.5, {0.7, 1.0}}}),
                  SmoothingError);
  CHECK_THROWS_AS(PiecewiseSmoothMap({0.0, 1.0}, {}), SmoothingError);
}

TEST_CASE("hermite cubic endpoints") {
  PiecewiseSmoothMap h = hermite_cubic(0.7, 1.9);
  CHECK(h(0.0) == doctest::Approx(0.0));
  CHECK(h(1.0) == doctest::Approx(1.0));
  CHECK(h.derivative(0.0, Side::right) == doctest::Approx(0.7));
  CHECK(h.derivative(1.0, Side::left) == doctest::Approx(1.9));
}

TEST_CASE("nonlinearity cocycle") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(0.5, 2.0), u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    PiecewiseSmoothMap h1 = hermite_cubic(d(rng), d(rng));
    PiecewiseSmoothMap h2 = hermite_cubic(d(rng), d(rng));
    std::vector<double> samples;
    for (int j = 0; j < 50; ++j) samples.push_back(u(rng));
    CHECK(check_cocycle(h1, h2, samples, 1e-9).pass);
  }
}

TEST_CASE("C2 system on synthetic data") {
  BreakData x, y;
  x.d_left = 2.0;
  x.d_right = 0.5;
  y.d_left = 0.5;
  y.d_right = 2.0;
  C2Solution s = solve_c2_system(x, y);
  CHECK(s.consistent);
  CHECK(s.rank == 1);
  CHECK(s.n_minus == 0.0);

  // consistent with nonzero right sides
  x.n_left = 1.0;
  x.n_right = 0.0;
  y.n_left = -0.5;
  y.n_right = 0.0;
  s = solve_c2_system(x, y);
  CHECK(s.rhs_x == doctest::Approx(0.5));
  CHECK(s.rhs_y == doctest::Approx(0.5));
  CHECK(s.consistent);
  CHECK(s.lhs_minus * s.n_minus + s.lhs_plus * s.n_plus == doctest::Approx(s.rhs_x));

  y.n_left = 3.0;
  CHECK_FALSE(solve_c2_system(x, y).consistent);
  BreakData bad;
  bad.d_left = 0.0;
  CHECK_THROWS_AS(solve_c2_system(bad, y), SmoothingError);
}

TEST_CASE("build_phi meets its boundary conditions") {
  C2Solution n;
  n.consistent = true;
  n.n_minus = 0.3;
  n.n_plus = -0.2;
  for (double sigma : {0.5, 1.0, 2.0, 10.0}) {
    PiecewiseSmoothMap phi = build_phi(0.0, 0.4, 1.0, sigma, n, PhiOptions{1.25, 0.0, 1e4});
    CHECK(phi(0.0) == doctest::Approx(0.0));
    CHECK(phi(0.4) == doctest::Approx(0.4));
    CHECK(phi(1.0) == doctest::Approx(1.0));
    double dl = phi.derivative(0.0, Side::right), dr = phi.derivative(1.0, Side::left);
    CHECK(dl / dr == doctest::Approx(sigma));
    CHECK(nonlinearity(phi, 0.0, Side::right) == doctest::Approx(-0.2));
    CHECK(nonlinearity(phi, 1.0, Side::left) == doctest::Approx(0.3));
    CHECK(phi.derivative(0.4, Side::left) == doctest::Approx(phi.derivative(0.4, Side::right)));
    CHECK(phi.second_derivative(0.4, Side::left) ==
          doctest::Approx(phi.second_derivative(0.4, Side::right)).epsilon(1e-9));
    CHECK(phi.min_derivative() > 0.0);
  }
  CHECK_THROWS_AS(build_phi(0.0, 0.4, 1.0, 1e6, n), SmoothingError);
  C2Solution bad;
  CHECK_THROWS_AS(build_phi(0.0, 0.4, 1.0, 2.0, bad), SmoothingError);
  CHECK_THROWS_AS(build_phi(0.0, 1.2, 1.0, 2.0, n), SmoothingError);
}

TEST_CASE("conjugate regularity") {
  PiecewiseSmoothMap R = rotation_map(0.3);
  PiecewiseSmoothMap id = PiecewiseSmoothMap::identity(0.0, 1.0);
  RegularityReport r = verify_conjugate_regularity(id, R, 2, 1e-6);
  CHECK(r.pass);
  CHECK(r.resolution_ok);

  // a break of T with sigma != 1 survives conjugation by the identity
  PiecewiseSmoothMap T({0.0, 0.5, 1.0}, {Poly{0.0, {0.2, 0.5}}, Poly{0.5, {0.45, 1.5}}});
  RegularityReport t = verify_conjugate_regularity(id, T, 1, 1e-6);
  CHECK_FALSE(t.pass);
  bool found = false;
  for (const auto& p : t.points)
    if (std::abs(p.point - 0.5) < 1e-9) found = p.sigma_gap > 1.0;
  CHECK(found);

  // C^1 but not C^2 at the seam of phi
  PiecewiseSmoothMap phi = hermite_cubic(1.5, 1.5);
  CHECK(verify_conjugate_regularity(phi, R, 1, 1e-5).pass);
  CHECK_FALSE(verify_conjugate_regularity(phi, R, 2, 1e-5).pass);

  CHECK_THROWS_AS(verify_conjugate_regularity(id, R, 3, 1e-6), SmoothingError);
}

TEST_CASE("profile derivative against the analytic one") {
  PiecewiseSmoothMap phi = hermite_cubic(1.2, 1.2);
  PiecewiseSmoothMap R = rotation_map(0.25);
  auto rows = conjugate_profile(phi, R, 40);
  REQUIRE(rows.size() == 40);
  for (const auto& row : rows) {
    double u = row[0];
    // v = phi^-1(u) by bisection, then DC = Dphi(v + b) / Dphi(v)
    double a = 0.0, b = 1.0;
    for (int i = 0; i < 100; ++i) {
      double m = 0.5 * (a + b);
      (phi(m) < u ? a : b) = m;
    }
    double v = 0.5 * (a + b);
    double w = v + 0.25;
    if (w >= 1.0) w -= 1.0;
    double dc = phi.derivative(w, Side::right) / phi.derivative(v, Side::right);
    CHECK(row[2] == doctest::Approx(dc).epsilon(1e-6));
  }
}

TEST_CASE("jump product against exact difference quotients") {
  SlopeSpec s = make_alpha(1, 1);
  LocalRotation lr = construct_local_rotation(s);
  CHECK(jump_product(lr) == 0);
  CHECK(jump_oracle(lr) == 0);

  // precompose g with an element that bends right of y
  FieldElem y = lr.y, w = y + power_alpha(s, -6), w2 = y + power_alpha(s, -5);
  FieldElem zero(s), one(s, 1L);
  PLMap b = glue({Segment{zero, y, zero}, Segment{y, w, realize(y, w, y, w2)},
                  Segment{w, one, realize(w, one, w2, one)}});
  REQUIRE(b(y) == y);
  LocalRotation bent = lr;
  bent.g = compose(lr.g, b);
  CHECK(jump_product(bent) == jump_oracle(bent));
  CHECK(jump_product(bent) != 0);
}

TEST_CASE("break data from a PL lift") {
  for (auto [p, q] : {std::pair{2L, 1L}, {1L, 1L}}) {
    SlopeSpec t = make_alpha(p, q);
    CircleLift T(construct_local_rotation(t).f);
    for (const auto& bp : T.base().breakpoints()) {
      BreakData bd = circle_break_data(T, bp);
      REQUIRE(bd.exponent);
      CHECK(bd.sigma == doctest::Approx(std::pow(t.approx(), static_cast<double>(*bd.exponent))));
    }
  }
}
