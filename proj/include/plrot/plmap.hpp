// Piecewise-linear homeomorphisms over Q(alpha) with slopes in <alpha>.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plrot/field.hpp"

namespace plrot {

class PLMapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// x -> alpha^k x + b on [left, next left].
struct Piece {
  FieldElem left;
  long k = 0;
  FieldElem b;

  FieldElem operator()(const FieldElem& x) const;
  friend bool operator==(const Piece&, const Piece&) = default;
};

struct JumpValue {
  FieldElem point;
  long left_exponent = 0;
  long right_exponent = 0;
  long sigma_exponent = 0;
  // Set when x is a domain endpoint and only one side exists.
  bool boundary = false;
};

/// Strictly increasing PL map of a closed interval. The piece list is kept
/// canonical: adjacent pieces with the same affine rule are merged, so two
/// maps are equal iff their piece lists are.
class PLMap {
 public:
  PLMap(FieldElem lo, FieldElem hi, std::vector<Piece> pieces);

  static PLMap identity(const FieldElem& lo, const FieldElem& hi);
  static PLMap affine(const FieldElem& lo, const FieldElem& hi, long k, const FieldElem& b);
  static PLMap translation(const FieldElem& lo, const FieldElem& hi, const FieldElem& shift);

  const SlopeSpec& spec() const { return lo_.spec(); }
  const FieldElem& lo() const { return lo_; }
  const FieldElem& hi() const { return hi_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }

  FieldElem piece_end(std::size_t i) const;
  // Piece containing x, left-closed; hi belongs to the last piece.
  std::size_t piece_index(const FieldElem& x) const;
  FieldElem operator()(const FieldElem& x) const;
  FieldElem image_lo() const { return pieces_.front()(lo_); }
  FieldElem image_hi() const { return pieces_.back()(hi_); }
  std::vector<FieldElem> breakpoints() const;

  PLMap restrict(const FieldElem& lo, const FieldElem& hi) const;
  // Conjugate by t -> t + s: returns t -> f(t - s) + s on [lo + s, hi + s].
  PLMap shifted(const FieldElem& s) const;

  friend bool operator==(const PLMap&, const PLMap&) = default;

 private:
  FieldElem lo_;
  FieldElem hi_;
  std::vector<Piece> pieces_;
};

FieldElem evaluate(const PLMap& f, const FieldElem& x);
// f o g; image of g must equal the domain of f.
PLMap compose(const PLMap& f, const PLMap& g);
PLMap invert(const PLMap& f);
// Joins maps on adjacent intervals whose values agree at the junction.
PLMap concat(const PLMap& left, const PLMap& right);

JumpValue one_sided_derivatives(const PLMap& f, const FieldElem& x);

// Domain [0, 1], fixes 0 and 1, breakpoints and intercepts in A.
bool is_in_F_alpha(const PLMap& f);

struct FixedPoint {
  FieldElem lo;
  FieldElem hi;  // == lo for an isolated fixed point
  JumpValue jump_lo;
  JumpValue jump_hi;
  bool is_interval() const { return lo != hi; }
};

// Fixed-point set as isolated points and maximal closed intervals, in order.
std::vector<FixedPoint> fixed_points(const PLMap& f);

bool commutes_on(const PLMap& f, const PLMap& g, const FieldElem& lo, const FieldElem& hi);

// Sum of |k_{i+1} - k_i| over internal breakpoints: total variation of
// log Df in units of log alpha.
long variation_log_slope(const PLMap& f);

std::string pretty(const PLMap& f);

}  // namespace plrot
