#include "plrot/local_rotation.hpp"

#include <cmath>

namespace plrot {

namespace {

// All pieces of f meeting the open interval (lo, hi) have slope exponent 0.
bool unit_slope_on(const PLMap& f, const FieldElem& lo, const FieldElem& hi) {
  if (lo < f.lo() || hi > f.hi()) return false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.pieces()[i].left < hi && f.piece_end(i) > lo && f.pieces()[i].k != 0) return false;
  }
  return true;
}

FieldElem frac(const FieldElem& x) { return x - FieldElem(x.spec(), mpq_class(x.floor())); }

// Pieces of c o f o c^-1 on [(lo - x0)/len, (hi - x0)/len], c(t) = (t - x0)/len, plus shift.
std::vector<Piece> rescaled_pieces(const PLMap& f, const FieldElem& lo, const FieldElem& hi,
                                   const FieldElem& x0, const FieldElem& len, long shift) {
  PLMap part = f.restrict(lo, hi);
  std::vector<Piece> out;
  for (const auto& pc : part.pieces()) {
    FieldElem slope = power_alpha(f.spec(), pc.k);
    out.push_back(Piece{(pc.left - x0) / len, pc.k, (slope * x0 + pc.b - x0) / len + shift});
  }
  return out;
}

}  // namespace

LocalRotation construct_local_rotation(const SlopeSpec& spec, const std::optional<FieldElem>& y_in,
                                       const ConstructOptions& opts) {
  const FieldElem zero(spec), one(spec, 1L);
  const FieldElem alpha = FieldElem::alpha(spec);
  FieldElem y = y_in ? *y_in : frac(alpha);
  if (!(y.spec() == spec)) throw LocalRotationError("y over a different alpha");
  if (!in_ring_A(y)) throw LocalRotationError("y is not in A");
  if (!(zero < y && y < one)) throw LocalRotationError("y is not in (0, 1)");

  std::optional<long> k;
  for (long kk = 0; kk <= opts.max_k; ++kk) {
    FieldElem b2 = (alpha - 1) * power_alpha(spec, -kk);
    FieldElem b1 = (alpha - 1) * power_alpha(spec, -kk - 1);
    if (y - b2 > zero && y + b1 < one) {
      k = kk;
      break;
    }
  }
  if (!k) throw LocalRotationError("no admissible k up to " + std::to_string(opts.max_k));

  FieldElem beta2 = (alpha - 1) * power_alpha(spec, -*k);
  FieldElem beta1 = (alpha - 1) * power_alpha(spec, -*k - 1);
  FieldElem x = y - beta2;
  FieldElem z = y + beta1;

  std::optional<FieldElem> eps;
  for (long j = 0; j <= -opts.realize.exponent_floor; ++j) {
    FieldElem e = power_alpha(spec, -j);
    if (x - e > zero && z + e < one) {
      eps = e;
      break;
    }
  }
  if (!eps) throw LocalRotationError("no epsilon = alpha^-j above the exponent floor");

  const RealizeOptions& ro = opts.realize;
  PLMap f = glue({
      Segment{zero, x - *eps, realize(zero, x - *eps, zero, x - *eps + beta1, ro)},
      Segment{x - *eps, y + *eps, beta1},
      Segment{y + *eps, one, realize(y + *eps, one, y + *eps + beta1, one, ro)},
  });
  PLMap g = glue({
      Segment{zero, y - *eps, realize(zero, y - *eps, zero, y - *eps - beta2, ro)},
      Segment{y - *eps, z + *eps, -beta2},
      Segment{z + *eps, one, realize(z + *eps, one, z + *eps - beta2, one, ro)},
  });
  FieldElem beta = beta1 / (beta1 + beta2);
  return LocalRotation{spec, *k, y, x, z, *eps, beta1, beta2, beta, std::move(f), std::move(g)};
}

bool RotationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

std::size_t RotationReport::passed() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.pass ? 1 : 0;
  return n;
}

RotationReport verify(const LocalRotation& lr) {
  RotationReport rep;
  const PLMap& f = lr.f;
  const PLMap& g = lr.g;
  auto in_dom = [](const PLMap& m, const FieldElem& t) { return t >= m.lo() && t <= m.hi(); };
  if (!in_dom(f, lr.y) || !in_dom(g, lr.y)) {
    rep.checks.push_back({"order", false, "y outside the domain"});
    return rep;
  }

  FieldElem gy = g(lr.y), fy = f(lr.y);
  bool c1 = gy == lr.x && fy == lr.z && lr.x < lr.y && lr.y < lr.z;
  rep.checks.push_back({"order: g(y) = x < y < z = f(y)", c1,
                        "g(y) = " + gy.to_string() + ", f(y) = " + fy.to_string()});

  bool can_compose = in_dom(g, fy) && in_dom(f, gy);
  FieldElem gfy = can_compose ? g(fy) : gy;
  FieldElem fgy = can_compose ? f(gy) : fy;
  bool c2 = can_compose && gfy == fgy;
  rep.checks.push_back({"commutation: gf(y) = fg(y)", c2,
                        can_compose ? "gf(y) = " + gfy.to_string() + ", fg(y) = " + fgy.to_string()
                                    : "compositions undefined"});

  bool eps_pos = lr.epsilon.sign() == Sign::positive;
  bool c3 = eps_pos && unit_slope_on(f, lr.x - lr.epsilon, lr.y + lr.epsilon) &&
            unit_slope_on(g, lr.y - lr.epsilon, lr.z + lr.epsilon);
  rep.checks.push_back({"unit slope: Df = 1 on (x-e, y+e), Dg = 1 on (y-e, z+e)", c3,
                        "epsilon = " + lr.epsilon.to_string()});

  bool c4 = false;
  std::string d4 = "degenerate interval";
  if (lr.z != lr.x && can_compose) {
    FieldElem ratio = frac((fgy - lr.x) / (lr.z - lr.x));
    rep.angle = ratio;
    c4 = ratio == lr.beta;
    d4 = "ratio = " + ratio.to_string() + ", beta = " + lr.beta.to_string();
  }
  rep.checks.push_back({"angle: (fg(y) - x)/(z - x) = beta mod 1", c4, d4});

  rep.checks.push_back({"f in F_alpha", is_in_F_alpha(f), ""});
  rep.checks.push_back({"g in F_alpha", is_in_F_alpha(g), ""});
  return rep;
}

CircleLift induced_iet(const LocalRotation& lr) {
  RotationReport rep = verify(lr);
  if (!rep.all_pass()) throw LocalRotationError("induced_iet: local rotation does not verify");
  FieldElem len = lr.z - lr.x;
  std::vector<Piece> pieces = rescaled_pieces(lr.f, lr.x, lr.y, lr.x, len, 0);
  std::vector<Piece> right = rescaled_pieces(lr.g, lr.y, lr.z, lr.x, len, 1);
  pieces.insert(pieces.end(), right.begin(), right.end());
  const SlopeSpec& s = lr.spec;
  return CircleLift(PLMap(FieldElem(s), FieldElem(s, 1L), std::move(pieces)));
}

namespace {

FieldElem bump_length(const SlopeSpec& s, long m) { return power_alpha(s, m) + power_alpha(s, m + 1); }

PLMap bump(const FieldElem& lo, long m) {
  const SlopeSpec& s = lo.spec();
  return layout_moves(lo, lo + bump_length(s, m), lo, {Move{m, 1}, Move{m, -1}});
}

}  // namespace

PinnedElement construct_pinned_element(const SlopeSpec& spec, const FieldElem& lo, const FieldElem& hi,
                                       long exponent_floor) {
  const FieldElem zero(spec), one(spec, 1L);
  if (!in_ring_A(lo) || !in_ring_A(hi)) throw LocalRotationError("pinned element: endpoints outside A");
  if (!(zero < lo && lo < hi && hi < one)) throw LocalRotationError("pinned element: need 0 < lo < hi < 1");
  const FieldElem width = hi - lo;
  long m = static_cast<long>(std::floor(std::log(width.approx()) / std::log(spec.approx()))) + 1;
  for (; m >= exponent_floor; --m) {
    // middle bump [s, u] with s = lo + alpha^m
    FieldElem s = lo + power_alpha(spec, m);
    FieldElem u = s + bump_length(spec, m);
    if (!(u < hi)) continue;
    FieldElem l = s - bump_length(spec, m);
    if (!(l > zero)) continue;
    // right bump [u, r] with r >= hi
    long m3 = m;
    while (u + bump_length(spec, m3) < hi) ++m3;
    while (u + bump_length(spec, m3 - 1) >= hi) --m3;
    FieldElem r = u + bump_length(spec, m3);
    if (r > one) continue;

    std::vector<Segment> segs;
    segs.push_back(Segment{zero, l, PLMap::identity(zero, l)});
    segs.push_back(Segment{l, s, bump(l, m)});
    segs.push_back(Segment{s, u, bump(s, m)});
    segs.push_back(Segment{u, r, bump(u, m3)});
    if (r < one) segs.push_back(Segment{r, one, PLMap::identity(r, one)});
    return PinnedElement{glue(segs), s, u};
  }
  throw LocalRotationError("pinned element: interval too short for the exponent floor");
}

}  // namespace plrot
