#include <doctest.h>

#include "plrot/local_rotation.hpp"

using namespace plrot;

namespace {

void check_definition(const LocalRotation& lr) {
  const FieldElem& e = lr.epsilon;
  CHECK(lr.g(lr.y) == lr.x);
  CHECK(lr.f(lr.y) == lr.z);
  CHECK(lr.x < lr.y);
  CHECK(lr.y < lr.z);
  CHECK(lr.beta == lr.beta1 / (lr.beta1 + lr.beta2));
  // f is a translation by beta1 near [x, y], g by -beta2 near [y, z].
  for (int i = 0; i <= 8; ++i) {
    FieldElem s = FieldElem::rational(lr.spec, i, 8);
    FieldElem u = (lr.x - e) + (lr.y - lr.x + e * 2) * s;
    FieldElem v = (lr.y - e) + (lr.z - lr.y + e * 2) * s;
    CHECK(lr.f(u) == u + lr.beta1);
    CHECK(lr.g(v) == v - lr.beta2);
  }
  CHECK(is_in_F_alpha(lr.f));
  CHECK(is_in_F_alpha(lr.g));
}

}  // namespace

TEST_CASE("golden local rotation") {
  SlopeSpec s = make_alpha(1, 1);
  LocalRotation lr = construct_local_rotation(s);
  CHECK(lr.k == 1);
  CHECK(lr.y == FieldElem::alpha(s) - 1);
  CHECK(lr.epsilon == power_alpha(s, -5));
  CHECK(lr.f.size() == 4);
  CHECK(lr.g.size() == 5);
  check_definition(lr);
  RotationReport rep = verify(lr);
  CHECK(rep.all_pass());
  CHECK(rep.passed() == rep.checks.size());
  REQUIRE(rep.angle);
  CHECK(*rep.angle == lr.beta);
}

TEST_CASE("local rotations for other slopes") {
  for (auto [p, q] : {std::pair{2L, 1L}, {3L, 1L}, {1L, 3L}, {3L, 2L}, {3L, -1L}}) {
    CAPTURE(p);
    CAPTURE(q);
    SlopeSpec s = make_alpha(p, q);
    LocalRotation lr = construct_local_rotation(s);
    check_definition(lr);
    CHECK(verify(lr).all_pass());
  }
}

TEST_CASE("alternative base point") {
  SlopeSpec s = make_alpha(1, 1);
  FieldElem y = power_alpha(s, -2);
  LocalRotation lr = construct_local_rotation(s, y);
  CHECK(lr.y == y);
  check_definition(lr);
  CHECK(verify(lr).all_pass());
  CHECK_THROWS_AS(construct_local_rotation(s, FieldElem(s, 0L)), LocalRotationError);
  CHECK_THROWS_AS(construct_local_rotation(s, FieldElem(s, 1L)), LocalRotationError);
}

TEST_CASE("tampered data fails verification") {
  SlopeSpec s = make_alpha(1, 1);
  LocalRotation lr = construct_local_rotation(s);
  LocalRotation bad = lr;
  bad.x = bad.x + power_alpha(s, -9);
  CHECK_FALSE(verify(bad).all_pass());
  bad = lr;
  bad.f = lr.g;
  CHECK_FALSE(verify(bad).all_pass());
}

TEST_CASE("induced interval exchange is the rotation by the angle") {
  SlopeSpec s = make_alpha(1, 1);
  LocalRotation lr = construct_local_rotation(s);
  CircleLift T = induced_iet(lr);
  CHECK(T.size() == 1);
  CHECK(T == CircleLift::rotation(FieldElem(s, 2L, -1L)));
  for (auto [p, q] : {std::pair{2L, 1L}, {3L, -1L}}) {
    SlopeSpec t = make_alpha(p, q);
    LocalRotation l2 = construct_local_rotation(t);
    CircleLift T2 = induced_iet(l2);
    FieldElem w = l2.z - l2.x;
    for (int i = 0; i <= 10; ++i) {
      FieldElem u = FieldElem::rational(t, i, 11);
      FieldElem pt = l2.x + w * u;
      FieldElem img = pt <= l2.y ? l2.f(pt) : l2.g(pt);
      FieldElem expect = (img - l2.x) / w;
      FieldElem got = T2(u);
      CHECK(got - expect == FieldElem(t, (got - expect).floor().get_si()));
    }
  }
}

TEST_CASE("pinned element") {
  SlopeSpec s = make_alpha(1, 1);
  LocalRotation lr = construct_local_rotation(s);
  PinnedElement pe = construct_pinned_element(s, lr.x, lr.z);
  CHECK(is_in_F_alpha(pe.h));
  CHECK(lr.x < pe.s);
  CHECK(pe.s < pe.u);
  CHECK(pe.u < lr.z);
  std::vector<FieldElem> inside;
  for (const auto& fp : fixed_points(pe.h)) {
    if (fp.hi <= lr.x || fp.lo >= lr.z) continue;
    CHECK_FALSE(fp.is_interval());
    inside.push_back(fp.lo);
    CHECK(fp.jump_lo.sigma_exponent != 0);
  }
  CHECK(inside == std::vector<FieldElem>{pe.s, pe.u});

  SlopeSpec t = make_alpha(2, 1);
  PinnedElement p2 = construct_pinned_element(t, power_alpha(t, -2), power_alpha(t, -1));
  CHECK(is_in_F_alpha(p2.h));
  CHECK(p2.h(p2.s) == p2.s);
  CHECK(p2.h(p2.u) == p2.u);
  CHECK(one_sided_derivatives(p2.h, p2.s).sigma_exponent != 0);
}
