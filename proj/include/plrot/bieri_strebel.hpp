// Constructive Bieri-Strebel criterion for Lambda = <alpha>, A = Z[alpha, alpha^-1].
//
// realize() maps a box [a, c] onto [a', c'] by a PL map with slopes in
// <alpha> and breakpoints in A. The length defect d = (c' - a') - (c - a)
// is written as (alpha - 1) e, e is expanded as a signed sum of powers of
// alpha ("moves"), and each unit move becomes one piece of slope alpha
// (length alpha^m, gains (alpha - 1) alpha^m) or alpha^-1 (length
// alpha^(m+1), loses the same amount). Moves are pushed to lower exponents
// with alpha^m = p alpha^(m-1) + q alpha^(m-2) until they fit in the box.
// Boxes whose length ratio leaves [1/alpha, alpha] first get a pure
// alpha^j rescaling layer.

#pragma once

#include <variant>
#include <vector>

#include "plrot/plmap.hpp"

namespace plrot {

class RealizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Move {
  long exponent = 0;
  long count = 0;  // signed; |count| units of +-(alpha - 1) alpha^exponent
  friend bool operator==(const Move&, const Move&) = default;
};

struct RealizationPlan {
  FieldElem defect;   // (c' - a') - alpha^prescale (c - a)
  FieldElem witness;  // defect = (alpha - 1) * witness
  long prescale = 0;
  std::vector<Move> moves;  // sorted by decreasing exponent, nonzero counts
  long rewrites = 0;
};

struct RealizeOptions {
  long exponent_floor = -64;
  long max_rewrites = 100000;
};

// Sum of count * (alpha - 1) alpha^exponent.
FieldElem moves_total(const SlopeSpec& spec, const std::vector<Move>& moves);
// Domain length consumed by laying out the moves.
FieldElem moves_space(const SlopeSpec& spec, const std::vector<Move>& moves);
// One rewrite alpha^m -> p alpha^(m-1) + q alpha^(m-2) of the highest move.
std::vector<Move> rewrite_top(const SlopeSpec& spec, const std::vector<Move>& moves);

// c' - a' == c - a mod (alpha - 1)A, after validating the boxes.
bool bs_check(const FieldElem& a, const FieldElem& c, const FieldElem& a2, const FieldElem& c2);

RealizationPlan plan_realization(const FieldElem& a, const FieldElem& c, const FieldElem& a2,
                                 const FieldElem& c2, const RealizeOptions& opts = {});

// Lays out moves left to right on [lo, hi] starting at image lo_image, with a
// trailing identity-slope filler. Throws RealizeError if the moves overflow.
PLMap layout_moves(const FieldElem& lo, const FieldElem& hi, const FieldElem& lo_image,
                   const std::vector<Move>& moves);

PLMap realize(const FieldElem& a, const FieldElem& c, const FieldElem& a2, const FieldElem& c2,
              const RealizeOptions& opts = {}, RealizationPlan* plan_out = nullptr);

struct Segment {
  FieldElem lo;
  FieldElem hi;
  std::variant<PLMap, FieldElem> map;  // a PL map on [lo, hi] or a translation amount
};

// Glues maps on consecutive intervals into one continuous PL map.
PLMap glue(const std::vector<Segment>& segments);

}  // namespace plrot
