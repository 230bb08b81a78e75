#include "plrot/bieri_strebel.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace plrot {

namespace {

std::vector<Move> normalized(std::map<long, long, std::greater<>> acc) {
  std::vector<Move> out;
  for (auto [m, n] : acc)
    if (n != 0) out.push_back(Move{m, n});
  return out;
}

bool integral(const FieldElem& x) { return x.a().get_den() == 1 && x.b().get_den() == 1; }

void check_box(const FieldElem& lo, const FieldElem& hi) {
  if (!(lo < hi)) throw RealizeError("degenerate box [" + lo.to_string() + ", " + hi.to_string() + "]");
  if (!in_ring_A(lo) || !in_ring_A(hi)) throw RealizeError("box endpoint outside A");
}

}  // namespace

FieldElem moves_total(const SlopeSpec& spec, const std::vector<Move>& moves) {
  FieldElem total(spec);
  for (const auto& mv : moves) total += power_alpha(spec, mv.exponent) * mv.count;
  return total * (FieldElem::alpha(spec) - 1);
}

FieldElem moves_space(const SlopeSpec& spec, const std::vector<Move>& moves) {
  FieldElem space(spec);
  for (const auto& mv : moves) {
    if (mv.count > 0)
      space += power_alpha(spec, mv.exponent) * mv.count;
    else
      space += power_alpha(spec, mv.exponent + 1) * (-mv.count);
  }
  return space;
}

std::vector<Move> rewrite_top(const SlopeSpec& spec, const std::vector<Move>& moves) {
  std::map<long, long, std::greater<>> acc;
  for (const auto& mv : moves) acc[mv.exponent] += mv.count;
  auto top = acc.begin();
  while (top != acc.end() && top->second == 0) top = acc.erase(top);
  if (top == acc.end()) return {};
  long m = top->first;
  long n = top->second;
  acc.erase(top);
  acc[m - 1] += n * spec.p;
  acc[m - 2] += n * spec.q;
  return normalized(std::move(acc));
}

bool bs_check(const FieldElem& a, const FieldElem& c, const FieldElem& a2, const FieldElem& c2) {
  check_box(a, c);
  check_box(a2, c2);
  return congruent_mod_ideal(c2 - a2, c - a);
}

RealizationPlan plan_realization(const FieldElem& a, const FieldElem& c, const FieldElem& a2,
                                 const FieldElem& c2, const RealizeOptions& opts) {
  if (!bs_check(a, c, a2, c2))
    throw RealizeError("lengths are not congruent modulo (alpha - 1)A");
  const SlopeSpec& spec = a.spec();
  const FieldElem alpha = FieldElem::alpha(spec);
  FieldElem len = c - a;
  FieldElem len2 = c2 - a2;

  long j = 0;
  if (len2 > alpha * len || len2 * alpha < len) {
    // alpha^j len <= len2 < alpha^(j+1) len
    double guess = std::log(len2.approx() / len.approx()) / std::log(spec.approx());
    j = static_cast<long>(std::floor(guess));
    while (power_alpha(spec, j) * len > len2) --j;
    while (power_alpha(spec, j + 1) * len <= len2) ++j;
  }
  FieldElem base = power_alpha(spec, j) * len;
  FieldElem defect = len2 - base;
  FieldElem witness = defect / (alpha - 1);

  // witness = alpha^-s (u + v alpha) with u, v integers
  long s = 0;
  FieldElem scaled = witness;
  while (!integral(scaled)) {
    if (++s > -opts.exponent_floor)
      throw RealizeError("no Laurent expansion of the ideal witness above the exponent floor");
    scaled *= alpha;
  }
  std::map<long, long, std::greater<>> acc;
  if (!scaled.a().get_num().fits_slong_p() || !scaled.b().get_num().fits_slong_p())
    throw RealizeError("witness coefficients too large");
  acc[-s] += scaled.a().get_num().get_si();
  acc[1 - s] += scaled.b().get_num().get_si();

  RealizationPlan plan{defect, witness, j, normalized(std::move(acc)), 0};
  while (moves_space(spec, plan.moves) > base) {
    if (++plan.rewrites > opts.max_rewrites) throw RealizeError("rewrite budget exhausted");
    plan.moves = rewrite_top(spec, plan.moves);
    if (moves_total(spec, plan.moves) != defect) throw RealizeError("rewrite changed the defect");
    if (!plan.moves.empty() && plan.moves.back().exponent < opts.exponent_floor)
      throw RealizeError("moves do not fit above exponent floor " + std::to_string(opts.exponent_floor));
  }
  return plan;
}

PLMap layout_moves(const FieldElem& lo, const FieldElem& hi, const FieldElem& lo_image,
                   const std::vector<Move>& moves) {
  const SlopeSpec& spec = lo.spec();
  std::vector<Piece> pieces;
  FieldElem t = lo;
  FieldElem img = lo_image;
  auto emit = [&](long k, const FieldElem& length) {
    FieldElem slope = power_alpha(spec, k);
    pieces.push_back(Piece{t, k, img - slope * t});
    t += length;
    img += slope * length;
  };
  for (const auto& mv : moves) {
    long units = mv.count > 0 ? mv.count : -mv.count;
    FieldElem length = power_alpha(spec, mv.count > 0 ? mv.exponent : mv.exponent + 1);
    for (long u = 0; u < units; ++u) emit(mv.count > 0 ? 1 : -1, length);
  }
  if (t > hi) throw RealizeError("moves overflow the box");
  if (t < hi) emit(0, hi - t);
  if (pieces.empty()) emit(0, hi - lo);
  return PLMap(lo, hi, std::move(pieces));
}

PLMap realize(const FieldElem& a, const FieldElem& c, const FieldElem& a2, const FieldElem& c2,
              const RealizeOptions& opts, RealizationPlan* plan_out) {
  RealizationPlan plan = plan_realization(a, c, a2, c2, opts);
  const SlopeSpec& spec = a.spec();
  FieldElem slope = power_alpha(spec, plan.prescale);
  FieldElem base_hi = a2 + slope * (c - a);
  PLMap scale = PLMap::affine(a, c, plan.prescale, a2 - slope * a);
  PLMap moves = layout_moves(a2, base_hi, a2, plan.moves);
  PLMap f = compose(moves, scale);

  if (f.lo() != a || f.hi() != c || f.image_lo() != a2 || f.image_hi() != c2)
    throw RealizeError("post-verification failed: endpoint images");
  for (const auto& pc : f.pieces())
    if (!in_ring_A(pc.left) || !in_ring_A(pc.b))
      throw RealizeError("post-verification failed: breakpoint or intercept outside A");
  if (plan_out) *plan_out = std::move(plan);
  return f;
}

PLMap glue(const std::vector<Segment>& segments) {
  if (segments.empty()) throw PLMapError("glue: no segments");
  std::optional<PLMap> acc;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const Segment& sg = segments[i];
    if (i > 0 && segments[i - 1].hi != sg.lo) throw PLMapError("glue: gap or overlap at segment " + std::to_string(i));
    PLMap piece = std::holds_alternative<PLMap>(sg.map)
                      ? std::get<PLMap>(sg.map)
                      : PLMap::translation(sg.lo, sg.hi, std::get<FieldElem>(sg.map));
    if (piece.lo() != sg.lo || piece.hi() != sg.hi)
      throw PLMapError("glue: segment map domain does not match its interval");
    acc = acc ? concat(*acc, piece) : piece;
  }
  return *acc;
}

}  // namespace plrot
