// Piecewise-smooth maps, nonlinearity N(h) = D log Dh, the C^1 / C^2 jump
// conditions for phi T phi^-1 and a finite-difference verifier.
//
// Floating point throughout except jump_product, which reads exact slope
// exponents off the PL data.

#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "plrot/circle.hpp"
#include "plrot/local_rotation.hpp"

namespace plrot {

class SmoothingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Polynomial in the local variable (t - origin); c[i] multiplies (t - origin)^i.
struct Poly {
  double origin = 0.0;
  std::vector<double> c;

  double operator()(double t) const;
  double d1(double t) const;
  double d2(double t) const;
  Poly derivative() const;
  std::size_t degree() const { return c.empty() ? 0 : c.size() - 1; }
};

// outer(inner(t)), expanded around inner.origin.
Poly compose(const Poly& outer, const Poly& inner);

enum class Side { left, right };

class PiecewiseSmoothMap {
 public:
  // breakpoints b_0 < ... < b_n, polys[i] lives on [b_i, b_{i+1}].
  PiecewiseSmoothMap(std::vector<double> breakpoints, std::vector<Poly> polys);

  static PiecewiseSmoothMap affine(double lo, double hi, double slope, double intercept);
  static PiecewiseSmoothMap identity(double lo, double hi) { return affine(lo, hi, 1.0, 0.0); }

  double lo() const { return bp_.front(); }
  double hi() const { return bp_.back(); }
  std::size_t size() const { return polys_.size(); }
  const std::vector<double>& breakpoints() const { return bp_; }
  const std::vector<Poly>& polys() const { return polys_; }

  std::size_t piece_at(double t, Side side) const;
  bool is_breakpoint(double t) const;
  double operator()(double t) const;
  double derivative(double t, Side side) const;
  double second_derivative(double t, Side side) const;

  // Smallest derivative on a uniform grid of `per_piece` points per piece.
  double min_derivative(std::size_t per_piece = 2000) const;
  double max_derivative(std::size_t per_piece = 2000) const;

 private:
  std::vector<double> bp_;
  std::vector<Poly> polys_;
};

double nonlinearity(const PiecewiseSmoothMap& h, double t);
double nonlinearity(const PiecewiseSmoothMap& h, double t, Side side);

// Monotone cubic on [0, 1] with h(0) = 0, h(1) = 1, Dh(0) = d0, Dh(1) = d1.
PiecewiseSmoothMap hermite_cubic(double d0, double d1);

struct CocycleResult {
  double max_residual = 0.0;
  bool pass = false;
};

// max |N(h1 h2) - (N(h1) o h2 . Dh2 + N(h2))| over the samples, with the left
// side taken from the exactly composed polynomial.
CocycleResult check_cocycle(const PiecewiseSmoothMap& h1, const PiecewiseSmoothMap& h2,
                            const std::vector<double>& samples, double tol = 1e-6);

// Exponent of sigma(T)(x) sigma(T)(y) for T = f on [x, y], g on [y, z].
long jump_product(const LocalRotation& lr);

struct BreakData {
  double point = 0.0;
  double d_left = 1.0, d_right = 1.0;
  double sigma = 1.0;
  double n_left = 0.0, n_right = 0.0;
  std::optional<long> exponent;  // log_alpha sigma, when exact
};

// One-sided data of a degree-one circle map on [lo, hi]; at lo the left side
// is read at hi.
BreakData circle_break_data(const PiecewiseSmoothMap& T, double point);
BreakData circle_break_data(const CircleLift& T, const FieldElem& point);

struct C2Solution {
  bool consistent = false;
  double n_minus = 0.0;  // N_-(phi) at x, i.e. read at the right end
  double n_plus = 0.0;   // N_+(phi) at x
  double lhs_minus = 0.0, lhs_plus = 0.0;  // coefficients of N_-, N_+
  double rhs_x = 0.0, rhs_y = 0.0;
  int rank = 0;
};

C2Solution solve_c2_system(const BreakData& at_x, const BreakData& at_y, double tol = 1e-9);

struct PhiOptions {
  double d_mid = 1.0;        // derivative at the interior fixed point
  double second_mid = 0.0;   // second derivative there
  double max_condition = 1e4;  // max Dphi / min Dphi
};

// phi on [lo, hi] fixing lo, y, hi, C^2 at y, with D+phi(lo) / D-phi(hi) =
// sigma_target and one-sided nonlinearities N+ at lo, N- at hi. Two quintic
// Hermite pieces.
PiecewiseSmoothMap build_phi(double lo, double y, double hi, double sigma_target, const C2Solution& n,
                             const PhiOptions& opts = {});

struct RegularityPoint {
  double point = 0.0;
  double d_left = 0.0, d_right = 0.0;
  double sigma_gap = 0.0;
  double n_left = 0.0, n_right = 0.0;
  double n_gap = 0.0;
  double error_estimate = 0.0;
  bool pass = false;
};

struct RegularityReport {
  int order = 1;
  double tol = 0.0;
  std::vector<RegularityPoint> points;
  bool resolution_ok = true;
  std::string note;
  bool pass = false;
};

// phi T phi^-1 for a degree-one lift T whose base lives on [0, 1] and phi a
// homeomorphism of [0, 1] fixing the ends, both extended periodically.
RegularityReport verify_conjugate_regularity(const PiecewiseSmoothMap& phi, const PiecewiseSmoothMap& T,
                                             int order, double tol);

// Base of a PL lift as floating affine pieces.
PiecewiseSmoothMap to_smooth(const CircleLift& T);

// (u, C(u), DC(u)) on a uniform grid, DC by central differences.
std::vector<std::array<double, 3>> conjugate_profile(const PiecewiseSmoothMap& phi, const PiecewiseSmoothMap& T,
                                                     std::size_t n);

}  // namespace plrot
