// Local rotations (y; f, g) in F_alpha and the pinned non-differentiable element.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plrot/bieri_strebel.hpp"
#include "plrot/circle.hpp"

namespace plrot {

class LocalRotationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// g(y) = x < y < z = f(y); f = t + beta1 on (x - eps, y + eps),
/// g = t - beta2 on (y - eps, z + eps); angle beta = beta1 / (beta1 + beta2).
struct LocalRotation {
  SlopeSpec spec;
  long k = 0;
  FieldElem y, x, z, epsilon;
  FieldElem beta1, beta2, beta;
  PLMap f, g;
};

struct ConstructOptions {
  long max_k = 256;
  RealizeOptions realize;
};

// Default y is the fractional part of alpha. k is the least integer >= 0
// with 0 < y - (alpha-1) alpha^-k and y + (alpha-1) alpha^(-k-1) < 1;
// epsilon the largest alpha^-j with x - eps > 0 and z + eps < 1.
LocalRotation construct_local_rotation(const SlopeSpec& spec,
                                       const std::optional<FieldElem>& y = std::nullopt,
                                       const ConstructOptions& opts = {});

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RotationReport {
  std::vector<Check> checks;
  std::optional<FieldElem> angle;  // (fg(y) - x) / (z - x) reduced into [0, 1)
  bool all_pass() const;
  std::size_t passed() const;
};

// Conditions (1)-(4) of a local rotation, plus f, g in F_alpha.
RotationReport verify(const LocalRotation& lr);

// T = f on [x, y], g on (y, z], rescaled from [x, z] to a degree-one lift on [0, 1].
CircleLift induced_iet(const LocalRotation& lr);

struct PinnedElement {
  PLMap h;
  FieldElem s, u;
};

// h in F_alpha whose fixed-point set meets (lo, hi) in exactly two points s < u,
// both breakpoints of h. Built from three adjacent zero-defect bumps on
// [l, s], [s, u], [u, r] with l <= lo and r >= hi.
PinnedElement construct_pinned_element(const SlopeSpec& spec, const FieldElem& lo, const FieldElem& hi,
                                       long exponent_floor = -64);

}  // namespace plrot
