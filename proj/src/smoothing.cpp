#include "plrot/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace plrot {

double Poly::operator()(double t) const {
  double s = t - origin, v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * s + c[i];
  return v;
}

Poly Poly::derivative() const {
  Poly d{origin, {}};
  for (std::size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * static_cast<double>(i));
  if (d.c.empty()) d.c.push_back(0.0);
  return d;
}

double Poly::d1(double t) const {
  double s = t - origin, v = 0.0;
  for (std::size_t i = c.size(); i-- > 1;) v = v * s + c[i] * static_cast<double>(i);
  return v;
}

double Poly::d2(double t) const {
  double s = t - origin, v = 0.0;
  for (std::size_t i = c.size(); i-- > 2;) v = v * s + c[i] * static_cast<double>(i * (i - 1));
  return v;
}

namespace {

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

Poly compose(const Poly& outer, const Poly& inner) {
  // inner expressed in (t - inner.origin), shifted into outer's variable
  std::vector<double> shifted = inner.c.empty() ? std::vector<double>{0.0} : inner.c;
  shifted[0] -= outer.origin;
  std::vector<double> acc{outer.c.empty() ? 0.0 : outer.c.back()};
  for (std::size_t i = outer.c.size(); i-- > 1;) {
    acc = poly_mul(acc, shifted);
    acc[0] += outer.c[i - 1];
  }
  return Poly{inner.origin, acc};
}

PiecewiseSmoothMap::PiecewiseSmoothMap(std::vector<double> breakpoints, std::vector<Poly> polys)
    : bp_(std::move(breakpoints)), polys_(std::move(polys)) {
  if (polys_.empty() || bp_.size() != polys_.size() + 1)
    throw SmoothingError("need one polynomial per interval");
  for (std::size_t i = 0; i + 1 < bp_.size(); ++i)
    if (!(bp_[i] < bp_[i + 1])) throw SmoothingError("breakpoints must increase");
  for (std::size_t i = 0; i + 1 < polys_.size(); ++i) {
    double a = polys_[i](bp_[i + 1]), b = polys_[i + 1](bp_[i + 1]);
    if (std::abs(a - b) > 1e-12 * (1.0 + std::abs(a))) throw SmoothingError("discontinuous at a breakpoint");
  }
  for (std::size_t i = 0; i < polys_.size(); ++i) {
    for (int j = 0; j <= 64; ++j) {
      double t = bp_[i] + (bp_[i + 1] - bp_[i]) * j / 64.0;
      if (!(polys_[i].d1(t) > 0.0)) throw SmoothingError("piece is not strictly increasing");
    }
  }
}

PiecewiseSmoothMap PiecewiseSmoothMap::affine(double lo, double hi, double slope, double intercept) {
  return PiecewiseSmoothMap({lo, hi}, {Poly{lo, {slope * lo + intercept, slope}}});
}

std::size_t PiecewiseSmoothMap::piece_at(double t, Side side) const {
  if (t < lo() || t > hi()) throw SmoothingError("point outside the domain");
  auto it = std::upper_bound(bp_.begin(), bp_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - bp_.begin());
  i = i == 0 ? 0 : i - 1;
  if (i >= polys_.size()) i = polys_.size() - 1;
  if (side == Side::left && i > 0 && bp_[i] == t) --i;
  return i;
}

bool PiecewiseSmoothMap::is_breakpoint(double t) const {
  return std::binary_search(bp_.begin(), bp_.end(), t);
}

double PiecewiseSmoothMap::operator()(double t) const { return polys_[piece_at(t, Side::right)](t); }

double PiecewiseSmoothMap::derivative(double t, Side side) const { return polys_[piece_at(t, side)].d1(t); }

double PiecewiseSmoothMap::second_derivative(double t, Side side) const {
  return polys_[piece_at(t, side)].d2(t);
}

double PiecewiseSmoothMap::min_derivative(std::size_t per_piece) const {
  double m = INFINITY;
  for (std::size_t i = 0; i < polys_.size(); ++i)
    for (std::size_t j = 0; j <= per_piece; ++j)
      m = std::min(m, polys_[i].d1(bp_[i] + (bp_[i + 1] - bp_[i]) * static_cast<double>(j) / per_piece));
  return m;
}

double PiecewiseSmoothMap::max_derivative(std::size_t per_piece) const {
  double m = -INFINITY;
  for (std::size_t i = 0; i < polys_.size(); ++i)
    for (std::size_t j = 0; j <= per_piece; ++j)
      m = std::max(m, polys_[i].d1(bp_[i] + (bp_[i + 1] - bp_[i]) * static_cast<double>(j) / per_piece));
  return m;
}

double nonlinearity(const PiecewiseSmoothMap& h, double t) {
  if (h.is_breakpoint(t)) throw SmoothingError("nonlinearity at a breakpoint: use a one-sided variant");
  const Poly& p = h.polys()[h.piece_at(t, Side::right)];
  return p.d2(t) / p.d1(t);
}

double nonlinearity(const PiecewiseSmoothMap& h, double t, Side side) {
  const Poly& p = h.polys()[h.piece_at(t, side)];
  return p.d2(t) / p.d1(t);
}

PiecewiseSmoothMap hermite_cubic(double d0, double d1) {
  return PiecewiseSmoothMap({0.0, 1.0}, {Poly{0.0, {0.0, d0, 3.0 - 2.0 * d0 - d1, d0 + d1 - 2.0}}});
}

CocycleResult check_cocycle(const PiecewiseSmoothMap& h1, const PiecewiseSmoothMap& h2,
                            const std::vector<double>& samples, double tol) {
  CocycleResult res;
  for (double t : samples) {
    const Poly& p2 = h2.polys()[h2.piece_at(t, Side::right)];
    double s = p2(t);
    const Poly& p1 = h1.polys()[h1.piece_at(s, Side::right)];
    Poly comp = compose(p1, p2);
    double lhs = comp.d2(t) / comp.d1(t);
    double rhs = (p1.d2(s) / p1.d1(s)) * p2.d1(t) + p2.d2(t) / p2.d1(t);
    res.max_residual = std::max(res.max_residual, std::abs(lhs - rhs));
  }
  res.pass = res.max_residual <= tol;
  return res;
}

long jump_product(const LocalRotation& lr) {
  const PLMap& f = lr.f;
  const PLMap& g = lr.g;
  FieldElem gy = g(lr.y), fy = f(lr.y);
  long at_x = one_sided_derivatives(f, gy).right_exponent - one_sided_derivatives(g, fy).left_exponent;
  long at_y = one_sided_derivatives(g, lr.y).right_exponent - one_sided_derivatives(f, lr.y).left_exponent;
  return at_x + at_y;
}

BreakData circle_break_data(const PiecewiseSmoothMap& T, double point) {
  BreakData bd;
  bd.point = point;
  double left_at = point == T.lo() ? T.hi() : point;
  bd.d_left = T.derivative(left_at, Side::left);
  bd.d_right = T.derivative(point, Side::right);
  bd.n_left = T.second_derivative(left_at, Side::left) / bd.d_left;
  bd.n_right = T.second_derivative(point, Side::right) / bd.d_right;
  bd.sigma = bd.d_right / bd.d_left;
  return bd;
}

BreakData circle_break_data(const CircleLift& T, const FieldElem& point) {
  const PLMap& base = T.base();
  long kl, kr;
  if (point == base.lo() || point == base.hi()) {
    kl = base.pieces().back().k;
    kr = base.pieces().front().k;
  } else {
    JumpValue jv = one_sided_derivatives(base, point);
    kl = jv.left_exponent;
    kr = jv.right_exponent;
  }
  double a = T.spec().approx();
  BreakData bd;
  bd.point = point.approx();
  bd.d_left = std::pow(a, static_cast<double>(kl));
  bd.d_right = std::pow(a, static_cast<double>(kr));
  bd.sigma = bd.d_right / bd.d_left;
  bd.exponent = kr - kl;
  return bd;
}

C2Solution solve_c2_system(const BreakData& at_x, const BreakData& at_y, double tol) {
  if (!(at_y.d_left > 0.0 && at_y.d_right > 0.0 && at_x.d_left > 0.0 && at_x.d_right > 0.0))
    throw SmoothingError("derivative data must be positive");
  C2Solution sol;
  sol.lhs_minus = at_y.d_left;
  sol.lhs_plus = -at_y.d_right;
  sol.rhs_x = at_y.d_left * at_x.n_left - at_y.d_right * at_x.n_right;
  sol.rhs_y = -at_y.n_left + at_y.n_right;
  // both rows share the left side, so the rank is 1
  sol.rank = 1;
  double scale = 1.0 + std::abs(sol.rhs_x) + std::abs(sol.rhs_y);
  sol.consistent = std::abs(sol.rhs_x - sol.rhs_y) <= tol * scale;
  if (sol.consistent) {
    sol.n_plus = 0.0;
    sol.n_minus = sol.rhs_x / sol.lhs_minus;
  }
  return sol;
}

namespace {

// Quintic on [a, b] matching value, first and second derivative at both ends.
Poly quintic_hermite(double a, double b, double y0, double d0, double s0, double y1, double d1, double s1) {
  double h = b - a;
  double c0 = y0, c1 = d0, c2 = s0 / 2.0;
  double D0 = y1 - (c0 + c1 * h + c2 * h * h);
  double D1 = d1 - (c1 + 2.0 * c2 * h);
  double D2 = s1 - 2.0 * c2;
  double h2 = h * h, h3 = h2 * h;
  double c3 = (10.0 * D0 - 4.0 * D1 * h + D2 * h2 / 2.0) / h3;
  double c4 = (-15.0 * D0 + 7.0 * D1 * h - D2 * h2) / (h3 * h);
  double c5 = (6.0 * D0 - 3.0 * D1 * h + D2 * h2 / 2.0) / (h3 * h2);
  return Poly{a, {c0, c1, c2, c3, c4, c5}};
}

std::optional<PiecewiseSmoothMap> try_phi(double lo, double y, double hi, double d0, double d1, double n0,
                                          double n1, double dm, double sm, double max_condition) {
  Poly left = quintic_hermite(lo, y, lo, d0, n0 * d0, y, dm, sm);
  Poly right = quintic_hermite(y, hi, y, dm, sm, hi, d1, n1 * d1);
  PiecewiseSmoothMap m({lo, y, hi}, {left, right});
  double mn = m.min_derivative(), mx = m.max_derivative();
  if (!(mn > 0.0) || mx / mn > max_condition) return std::nullopt;
  return m;
}

}  // namespace

PiecewiseSmoothMap build_phi(double lo, double y, double hi, double sigma_target, const C2Solution& n,
                             const PhiOptions& opts) {
  if (!(lo < y && y < hi)) throw SmoothingError("build_phi: need lo < y < hi");
  if (!(sigma_target > 0.0)) throw SmoothingError("build_phi: sigma_target must be positive");
  if (!n.consistent) throw SmoothingError("build_phi: C2 data is inconsistent");
  // D+phi(lo) = sigma d1, D-phi(hi) = d1, mean slope near 1
  double d1 = 2.0 / (1.0 + sigma_target);
  double d0 = sigma_target * d1;
  std::vector<double> mids{opts.d_mid, 1.0, std::sqrt(d0 * d1), (d0 + d1) / 2.0};
  for (int j = -8; j <= 8; ++j) mids.push_back(opts.d_mid * std::pow(1.5, j));
  for (double dm : mids) {
    try {
      if (auto m = try_phi(lo, y, hi, d0, d1, n.n_plus, n.n_minus, dm, opts.second_mid, opts.max_condition))
        return *m;
    } catch (const SmoothingError&) {
      // not monotone with this interior slope
    }
  }
  throw SmoothingError("build_phi: no monotone phi within the conditioning bound for sigma_target = " +
                       std::to_string(sigma_target));
}

PiecewiseSmoothMap to_smooth(const CircleLift& T) {
  const PLMap& base = T.base();
  std::vector<double> bp;
  std::vector<Poly> polys;
  double a = T.spec().approx();
  for (std::size_t i = 0; i < base.size(); ++i) {
    const Piece& pc = base.pieces()[i];
    double l = pc.left.approx();
    double slope = std::pow(a, static_cast<double>(pc.k));
    bp.push_back(l);
    polys.push_back(Poly{l, {slope * l + pc.b.approx(), slope}});
  }
  bp.push_back(1.0);
  return PiecewiseSmoothMap(std::move(bp), std::move(polys));
}

namespace {

double inverse_of(const PiecewiseSmoothMap& m, double v) {
  // base maps [0, 1] onto [m(0), m(0) + 1]
  double shift = std::floor(v - m(0.0));
  double r = v - shift;
  double a = 0.0, b = 1.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    (m(mid) < r ? a : b) = mid;
  }
  return 0.5 * (a + b) + shift;
}

struct Conjugate {
  const PiecewiseSmoothMap& phi;
  const PiecewiseSmoothMap& T;

  static double lift(const PiecewiseSmoothMap& m, double t) {
    double n = std::floor(t);
    double r = t - n;
    return m(r) + n;
  }

  double operator()(double u) const { return lift(phi, lift(T, inverse_of(phi, u))); }
};

// One-sided first and second derivatives: second-order stencils, one
// Richardson step between h and h/2.
struct OneSided {
  double d1, d2, err1, err2;
};

OneSided one_sided(const std::function<double(double)>& C, double u, double dir, double h) {
  auto stencil = [&](double s) {
    double c0 = C(u), c1 = C(u + dir * s), c2 = C(u + 2 * dir * s), c3 = C(u + 3 * dir * s);
    double d1 = dir * (-3.0 * c0 + 4.0 * c1 - c2) / (2.0 * s);
    double d2 = (2.0 * c0 - 5.0 * c1 + 4.0 * c2 - c3) / (s * s);
    return std::pair{d1, d2};
  };
  auto [a1, a2] = stencil(h);
  auto [b1, b2] = stencil(h / 2.0);
  OneSided r;
  r.d1 = (4.0 * b1 - a1) / 3.0;
  r.d2 = (4.0 * b2 - a2) / 3.0;
  r.err1 = std::abs(b1 - a1) / 3.0;
  r.err2 = std::abs(b2 - a2) / 3.0;
  return r;
}

double frac01(double t) {
  double r = t - std::floor(t);
  return r >= 1.0 ? 0.0 : r;
}

}  // namespace

RegularityReport verify_conjugate_regularity(const PiecewiseSmoothMap& phi, const PiecewiseSmoothMap& T,
                                             int order, double tol) {
  if (order != 1 && order != 2) throw SmoothingError("order must be 1 or 2");
  if (phi.lo() != 0.0 || phi.hi() != 1.0 || T.lo() != 0.0 || T.hi() != 1.0)
    throw SmoothingError("maps must be based on [0, 1]");
  if (std::abs(phi(0.0)) > 1e-12 || std::abs(phi(1.0) - 1.0) > 1e-12)
    throw SmoothingError("phi must fix 0 and 1");
  if (std::abs(T(1.0) - T(0.0) - 1.0) > 1e-12) throw SmoothingError("T is not of degree one");

  Conjugate C{phi, T};
  std::function<double(double)> Cf = [&](double u) { return C(u); };

  // Candidate breaks of C: phi(b) for breaks b of T (the seam included) and
  // phi(T^-1(c)) for breaks c of phi.
  std::vector<double> pts;
  for (double b : T.breakpoints()) pts.push_back(frac01(Conjugate::lift(phi, b)));
  for (double c : phi.breakpoints()) {
    pts.push_back(frac01(c));
    pts.push_back(frac01(Conjugate::lift(phi, inverse_of(T, c))));
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> uniq;
  for (double p : pts)
    if (uniq.empty() || p - uniq.back() > 1e-9) uniq.push_back(p);
  if (uniq.size() > 1 && uniq.back() > 1.0 - 1e-9) uniq.pop_back();

  RegularityReport rep;
  rep.order = order;
  rep.tol = tol;
  rep.pass = true;
  const double h = 1e-4;
  for (double u : uniq) {
    OneSided L = one_sided(Cf, u, -1.0, h);
    OneSided R = one_sided(Cf, u, 1.0, h);
    RegularityPoint rp;
    rp.point = u;
    rp.d_left = L.d1;
    rp.d_right = R.d1;
    rp.sigma_gap = std::abs(R.d1 / L.d1 - 1.0);
    rp.n_left = L.d2 / L.d1;
    rp.n_right = R.d2 / R.d1;
    rp.n_gap = std::abs(rp.n_right - rp.n_left);
    double e1 = (L.err1 + R.err1) / std::min(L.d1, R.d1);
    double e2 = (L.err2 + R.err2) / std::min(L.d1, R.d1);
    rp.error_estimate = order == 1 ? e1 : std::max(e1, e2);
    rp.pass = rp.sigma_gap <= tol && (order == 1 || rp.n_gap <= tol);
    if (rp.error_estimate > tol) {
      rep.resolution_ok = false;
      rp.pass = false;
    }
    rep.pass = rep.pass && rp.pass;
    rep.points.push_back(rp);
  }
  if (!rep.resolution_ok)
    rep.note = "finite-difference error exceeds tol; loosen tol or use maps with smaller higher derivatives";
  return rep;
}

std::vector<std::array<double, 3>> conjugate_profile(const PiecewiseSmoothMap& phi, const PiecewiseSmoothMap& T,
                                                     std::size_t n) {
  Conjugate C{phi, T};
  std::vector<std::array<double, 3>> out;
  const double h = 1e-6;
  for (std::size_t i = 0; i < n; ++i) {
    double u = static_cast<double>(i) / static_cast<double>(n);
    out.push_back({u, C(u), (C(u + h) - C(u - h)) / (2 * h)});
  }
  return out;
}

}  // namespace plrot
