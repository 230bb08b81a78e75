#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "plrot/bieri_strebel.hpp"
#include "plrot/circle.hpp"

using namespace plrot;

namespace {

const SlopeSpec G = make_alpha(1, 1);
const FieldElem Z(G), ONE(G, 1L);

// A PL lift with two breaks that is not a rotation: base x -> f(x) + shift on
// [0, 1] where f in F_alpha, followed by a rotation.
CircleLift bumpy(const FieldElem& shift) {
  FieldElem m = power_alpha(G, -1);
  PLMap f = glue({Segment{Z, m, realize(Z, m, Z, power_alpha(G, -2))},
                  Segment{m, ONE, realize(m, ONE, power_alpha(G, -2), ONE)}});
  return compose(CircleLift::rotation(shift), CircleLift(f));
}

// Numeric rotation number oracle: long orbit in doubles.
double orbit_oracle(const CircleLift& F, int n) {
  std::vector<std::pair<double, double>> pieces;
  const PLMap& b = F.base();
  double a = G.approx();
  auto eval = [&](double t) {
    double fl = std::floor(t), r = t - fl;
    std::size_t i = 0;
    while (i + 1 < b.size() && b.pieces()[i + 1].left.approx() <= r) ++i;
    const Piece& pc = b.pieces()[i];
    return std::pow(a, static_cast<double>(pc.k)) * r + pc.b.approx() + fl;
  };
  double x = 0.0;
  for (int i = 0; i < n; ++i) x = eval(x);
  return x / n;
}

}  // namespace

TEST_CASE("lift validation") {
  CHECK_NOTHROW(CircleLift(PLMap::identity(Z, ONE)));
  CHECK_THROWS_AS(CircleLift(PLMap::identity(Z, ONE + 1)), CircleError);
  CHECK_THROWS_AS(CircleLift(PLMap::affine(Z, ONE, 1, Z)), CircleError);
}

TEST_CASE("lift evaluation is equivariant") {
  CircleLift F = bumpy(power_alpha(G, -3));
  for (int i = 0; i <= 20; ++i) {
    FieldElem t = FieldElem::rational(G, i, 20) * power_alpha(G, 0);
    CHECK(F(t + 3) == F(t) + 3);
    CHECK(F(t - 2) == F(t) - 2);
  }
}

TEST_CASE("composition and iteration of lifts agree pointwise") {
  CircleLift F = bumpy(power_alpha(G, -3));
  CircleLift R = CircleLift::rotation(power_alpha(G, -2));
  CircleLift FR = compose(F, R);
  CircleLift F3 = iterate(F, 3);
  for (int i = 0; i <= 25; ++i) {
    FieldElem t = FieldElem::rational(G, i, 25);
    CHECK(FR(t) == F(R(t)));
    CHECK(F3(t) == F(F(F(t))));
  }
  CHECK(iterate(F, 0) == CircleLift(PLMap::identity(Z, ONE)));
  CHECK(compose(R, R) == CircleLift::rotation(power_alpha(G, -2) * 2));
  IterateOptions tight;
  tight.piece_cap = 2;
  CHECK_THROWS_AS(iterate(F, 64, tight), CircleError);
}

TEST_CASE("compare_rotation on rigid rotations") {
  CircleLift R = CircleLift::rotation(FieldElem::rational(G, 2, 5));
  CHECK(compare_rotation(R, 2, 5).order == Order::equal);
  CHECK(compare_rotation(R, 1, 3).order == Order::greater);
  CHECK(compare_rotation(R, 1, 2).order == Order::less);
  CHECK_THROWS_AS(compare_rotation(R, 2, 4), CircleError);
  CHECK_THROWS_AS(compare_rotation(R, 1, 0), CircleError);
}

TEST_CASE("rational rotation number with a periodic-orbit witness") {
  CircleLift R = CircleLift::rotation(FieldElem::rational(G, 3, 7));
  RotationNumberResult r = rotation_number_cf(R, 20);
  CHECK(r.kind == RotationNumberResult::Kind::rational);
  CHECK(r.value == Fraction{3, 7});
  CHECK(r.digits == std::vector<long>{0, 2, 3});
  REQUIRE(r.witness);
  CHECK(iterate(R, 7)(*r.witness) == *r.witness + 3);
}

TEST_CASE("integer part and translation") {
  CircleLift R = CircleLift::rotation(power_alpha(G, -2) + 2);
  RotationNumberResult r = rotation_number_cf(R, 10);
  CHECK(r.integer_part == 2);
  CHECK(r.digits == std::vector<long>{0, 2, 1, 1, 1, 1, 1, 1, 1, 1});
  CircleLift N = CircleLift::rotation(FieldElem(G, -1L));
  RotationNumberResult rn = rotation_number_cf(N, 5);
  CHECK(rn.kind == RotationNumberResult::Kind::rational);
  CHECK(rn.integer_part == -1);
}

TEST_CASE("rotation number of a non-rigid PL lift brackets the orbit estimate") {
  for (long k : {-2L, -3L, -5L}) {
    CircleLift F = bumpy(power_alpha(G, k));
    RotationNumberResult r = rotation_number_cf(F, 8);
    double est = orbit_oracle(F, 200000);
    double rot = est - std::floor(est);
    if (r.kind == RotationNumberResult::Kind::rational) {
      CHECK(rot == doctest::Approx(r.value.value()).epsilon(1e-3));
    } else {
      CHECK(r.lower.value() <= rot + 1e-4);
      CHECK(rot - 1e-4 <= r.upper.value());
    }
  }
}

TEST_CASE("orbit estimate") {
  FieldElem beta = ONE / (ONE + FieldElem::alpha(G));
  CircleLift R = CircleLift::rotation(beta);
  std::vector<std::pair<long, double>> samples;
  OrbitEstimate e = rotation_number_orbit(R, 1000, Z, &samples);
  CHECK(samples.size() == 1001);
  CHECK(std::abs(e.rotation - beta.approx()) <= e.error_bound);
  CHECK_THROWS_AS(rotation_number_orbit(R, 0, Z), CircleError);
}

TEST_CASE("class P certificate counts the seam") {
  CircleLift R = CircleLift::rotation(power_alpha(G, -2));
  CHECK(class_P_certificate(R).variation == 0);
  CircleLift F = bumpy(power_alpha(G, -3));
  ClassPCertificate c = class_P_certificate(F);
  CHECK(c.in_class_p);
  CHECK(c.variation >= variation_log_slope(F.base()));
}
