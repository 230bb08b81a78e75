#include "plrot/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "plrot/smoothing.hpp"

namespace plrot {

namespace {

struct Ctx {
  CriterionResult& r;
  void expect(bool ok, const std::string& what) {
    if (!ok) r.failures.push_back(what);
  }
};

FieldElem one_over_one_plus_alpha(const SlopeSpec& s) {
  FieldElem one(s, 1L);
  return one / (one + FieldElem::alpha(s));
}

void local_rotation_checks(Ctx& c, long p, long q) {
  SlopeSpec s = make_alpha(p, q);
  LocalRotation lr = construct_local_rotation(s);
  RotationReport rep = verify(lr);
  std::string tag = "alpha(" + std::to_string(p) + "," + std::to_string(q) + "): ";
  for (const auto& ch : rep.checks) c.expect(ch.pass, tag + ch.name + " [" + ch.detail + "]");
  c.expect(rep.angle && *rep.angle == one_over_one_plus_alpha(s), tag + "angle != 1/(1+alpha)");
  c.expect(lr.beta2 / lr.beta1 == FieldElem::alpha(s), tag + "beta2/beta1 != alpha");
  c.r.data[tag + "angle"] = rep.angle ? to_json(*rep.angle) : json();
  c.r.data[tag + "checks_passed"] = rep.passed();
}

void criterion1(Ctx& c, std::mt19937_64&) {
  local_rotation_checks(c, 1, 1);
  SlopeSpec s = make_alpha(1, 1);
  LocalRotation lr = construct_local_rotation(s);
  c.expect(lr.beta == FieldElem(s, 2L) - FieldElem::alpha(s), "beta != 2 - alpha");
}

void criterion2(Ctx& c, std::mt19937_64&) {
  local_rotation_checks(c, 2, 1);
  local_rotation_checks(c, 3, 1);
}

void criterion3(Ctx& c, std::mt19937_64&) {
  SlopeSpec s = make_alpha(1, 1);
  LocalRotation lr = construct_local_rotation(s);
  CircleLift T = induced_iet(lr);
  c.expect(T == CircleLift::rotation(lr.beta), "induced map is not t -> t + beta: " + pretty(T.base()));
  long jp = jump_product(lr);
  c.expect(jp == 0, "jump product exponent " + std::to_string(jp));
  c.r.data["lift"] = to_json(T);
  c.r.data["jump_exponent"] = jp;
}

void criterion4(Ctx& c, std::mt19937_64&) {
  SlopeSpec s = make_alpha(1, 1);
  LocalRotation lr = construct_local_rotation(s);
  CircleLift T = induced_iet(lr);
  RotationNumberResult rn = rotation_number_cf(T, 12);
  CFExpansion cf = cf_expand(surd_of(one_over_one_plus_alpha(s)));
  std::vector<long> want{0, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
  c.expect(rn.kind == RotationNumberResult::Kind::irrational_enclosure, "rotation number reported rational");
  c.expect(rn.digits == cf.digits(12), "digits differ from cf_expand(1/(1+alpha))");
  c.expect(rn.digits == want, "digits != [0; 2, 1 x 10]");
  OrbitEstimate oe = rotation_number_orbit(T, 10000, FieldElem(s));
  double err = std::abs(oe.rotation - lr.beta.approx());
  c.expect(err <= 1e-4, "orbit estimate off by " + std::to_string(err));
  c.r.data["digits"] = rn.digits;
  c.r.data["orbit_rotation"] = oe.rotation;
  c.r.data["orbit_error"] = err;
}

bool realization_ok(const PLMap& f, const FieldElem& a, const FieldElem& cc, const FieldElem& a2,
                    const FieldElem& c2) {
  if (f.lo() != a || f.hi() != cc || f.image_lo() != a2 || f.image_hi() != c2) return false;
  if (f(a) != a2 || f(cc) != c2) return false;
  for (const auto& pc : f.pieces())
    if (!in_ring_A(pc.left) || !in_ring_A(pc.b)) return false;
  return true;
}

void criterion5(Ctx& c, std::mt19937_64&) {
  SlopeSpec g = make_alpha(1, 1);
  const FieldElem alpha = FieldElem::alpha(g);
  std::vector<FieldElem> ends;
  for (long u = 0; u <= 3; ++u)
    for (long v = 0; v <= 3; ++v) ends.push_back((FieldElem(g, u) + alpha * v) * power_alpha(g, -5));
  std::sort(ends.begin(), ends.end());
  std::vector<std::pair<FieldElem, FieldElem>> boxes;
  for (std::size_t i = 0; i < ends.size(); ++i)
    for (std::size_t j = i + 1; j < ends.size(); ++j) boxes.emplace_back(ends[i], ends[j]);
  long total = 0, ok = 0;
  for (const auto& [a, cc] : boxes) {
    for (const auto& [a2, c2] : boxes) {
      ++total;
      try {
        PLMap f = realize(a, cc, a2, c2);
        if (realization_ok(f, a, cc, a2, c2)) ++ok;
      } catch (const std::exception&) {
      }
    }
  }
  c.expect(ok == total, "golden grid: " + std::to_string(ok) + "/" + std::to_string(total) + " boxes realized");
  c.r.data["golden_boxes"] = total;
  c.r.data["golden_realized"] = ok;

  SlopeSpec s = make_alpha(2, 1);
  FieldElem zero(s), l(s, -2L, 1L);  // alpha - 2 = 1/alpha
  c.expect(!bs_check(zero, l, zero, l + 1), "1+sqrt2: defect 1 accepted");
  bool threw = false;
  try {
    realize(zero, l, zero, l + 1);
  } catch (const RealizeError&) {
    threw = true;
  }
  c.expect(threw, "1+sqrt2: realize accepted defect 1");
  long agree = 0, count = 0;
  for (long u = -20; u <= 20; ++u) {
    for (long v = -20; v <= 20; ++v) {
      FieldElem x(s, u, v);
      bool fast = congruent_mod_ideal(x, zero);
      bool slow = brute_force_in_ideal(x, 100, 4).found;
      ++count;
      agree += fast == slow ? 1 : 0;
    }
  }
  c.expect(agree == count, "congruence vs brute force: " + std::to_string(agree) + "/" + std::to_string(count));
  c.r.data["ideal_differences"] = count;
}

void criterion6(Ctx& c, std::mt19937_64&) {
  SlopeSpec s = make_alpha(1, 1);
  LocalRotation lr = construct_local_rotation(s);
  PinnedElement pe = construct_pinned_element(s, lr.x, lr.z);
  c.expect(is_in_F_alpha(pe.h), "h not in F_alpha");
  std::vector<FixedPoint> inside;
  for (const auto& fp : fixed_points(pe.h)) {
    if (fp.hi > lr.x && fp.lo < lr.z) inside.push_back(fp);
  }
  c.expect(inside.size() == 2, "fixed components in (x, z): " + std::to_string(inside.size()));
  json pts = json::array();
  for (const auto& fp : inside) {
    c.expect(!fp.is_interval(), "fixed interval inside (x, z)");
    c.expect(fp.lo > lr.x && fp.hi < lr.z, "fixed set touches the ends of (x, z)");
    c.expect(fp.jump_lo.sigma_exponent != 0, "sigma(h) = 1 at a fixed point");
    pts.push_back(json{{"point", to_json(fp.lo)}, {"sigma_exponent", fp.jump_lo.sigma_exponent}});
  }
  c.r.data["fixed_points"] = pts;
}

QuadraticSurd random_surd(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> dd(2, 10000), pp(-100, 100);
  for (;;) {
    long D = dd(rng);
    long r = std::lround(std::sqrt(static_cast<double>(D)));
    if (r * r == D) continue;
    long P = pp(rng);
    long N = D - P * P;
    std::vector<long> divs;
    long an = std::labs(N);
    for (long d = 1; d * d <= an; ++d) {
      if (an % d) continue;
      divs.push_back(d);
      divs.push_back(an / d);
    }
    long Q = divs[std::uniform_int_distribution<std::size_t>(0, divs.size() - 1)(rng)];
    if (rng() & 1) Q = -Q;
    return make_surd(P, Q, D);
  }
}

bool minimal(const CFExpansion& cf) {
  const std::size_t n = cf.period.size();
  if (n == 0) return false;
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool rep = true;
    for (std::size_t i = d; i < n && rep; ++i) rep = cf.period[i] == cf.period[i - d];
    if (rep) return false;
  }
  if (cf.preperiod.size() > 1 && cf.preperiod.back() == cf.period.back()) return false;
  for (long a : cf.period)
    if (a < 1) return false;
  for (std::size_t i = 1; i < cf.preperiod.size(); ++i)
    if (cf.preperiod[i] < 1) return false;
  return true;
}

void criterion7(Ctx& c, std::mt19937_64& rng) {
  SlopeSpec g = make_alpha(1, 1);
  QuadraticSurd golden = surd_of(FieldElem::alpha(g));
  CFExpansion cg = cf_expand(golden);
  c.expect(cg.preperiod == std::vector<long>{1} && cg.period == std::vector<long>{1}, "golden cf");
  CFExpansion cs = cf_expand(make_surd(1, 1, 2));
  c.expect(cs.preperiod == std::vector<long>{2} && cs.period == std::vector<long>{2}, "1+sqrt2 cf");

  std::vector<QuadraticSurd> surds;
  long minimal_ok = 0;
  for (int i = 0; i < 100; ++i) {
    surds.push_back(random_surd(rng));
    minimal_ok += minimal(cf_expand(surds.back())) ? 1 : 0;
  }
  c.expect(minimal_ok == 100, "minimal periods: " + std::to_string(minimal_ok) + "/100");

  std::vector<std::array<long, 4>> mats;
  for (long a = -10; a <= 10; ++a)
    for (long b = -10; b <= 10; ++b)
      for (long cc = -10; cc <= 10; ++cc)
        for (long d = -10; d <= 10; ++d)
          if (a * d - b * cc == 1) mats.push_back({a, b, cc, d});
  long tails = 0;
  std::uniform_int_distribution<std::size_t> pick(0, mats.size() - 1);
  for (int i = 0; i < 100; ++i) {
    const auto& m = mats[pick(rng)];
    const QuadraticSurd& s = surds[static_cast<std::size_t>(i)];
    tails += tails_equal(cf_expand(s), cf_expand(apply_psl2(s, m[0], m[1], m[2], m[3]))) ? 1 : 0;
  }
  c.expect(tails == 100, "PSL(2,Z) tails: " + std::to_string(tails) + "/100");

  DiophantineWitness w = diophantine_witness(golden, 0, 100);
  double wv = w.lower_bound.get_d();
  c.expect(wv > 0.44 && wv < 0.45, "witness(golden, 0, 100) = " + std::to_string(wv) + " at p/q = " +
                                       w.p_at_min.get_str() + "/" + w.q_at_min.get_str() +
                                       ", outside (0.44, 0.45)");
  // brute force over every q <= 100 and both neighbours of q alpha
  mpq_class best;
  bool first = true;
  for (long q = 1; q <= 100; ++q) {
    long fl = static_cast<long>(std::floor(q * golden.approx()));
    for (long p : {fl, fl + 1}) {
      mpq_class v = approximation_quality_lower(golden, p, q, 0);
      if (first || v < best) best = v;
      first = false;
    }
  }
  c.expect(best == w.lower_bound, "convergent minimum differs from brute force over q <= 100");
  c.r.data["witness"] = json{{"value", wv}, {"exact", rational_string(w.lower_bound)},
                             {"p", w.p_at_min.get_str()}, {"q", w.q_at_min.get_str()}, {"q_max", 100}};
  c.r.data["psl2_matrices"] = mats.size();
}

void criterion8(Ctx& c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.05, 2.95), unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    PiecewiseSmoothMap h1 = hermite_cubic(dist(rng), dist(rng));
    PiecewiseSmoothMap h2 = hermite_cubic(dist(rng), dist(rng));
    std::vector<double> samples;
    for (int j = 0; j < 200; ++j) samples.push_back(unit(rng) * 0.998 + 0.001);
    worst = std::max(worst, check_cocycle(h1, h2, samples).max_residual);
  }
  c.expect(worst <= 1e-6, "cocycle residual " + std::to_string(worst));
  c.r.data["cocycle_max_residual"] = worst;

  SlopeSpec s = make_alpha(1, 1);
  LocalRotation lr = construct_local_rotation(s);
  CircleLift T = induced_iet(lr);
  FieldElem ytilde = (lr.y - lr.x) / (lr.z - lr.x);
  BreakData bx = circle_break_data(T, FieldElem(s));
  BreakData by = circle_break_data(T, ytilde);
  C2Solution sol = solve_c2_system(bx, by);
  c.expect(sol.consistent && sol.n_minus == 0.0 && sol.n_plus == 0.0, "PL data: C2 system not solved by (0, 0)");

  PhiOptions po;
  po.d_mid = 1.25;
  PiecewiseSmoothMap Ts = to_smooth(T);
  PiecewiseSmoothMap phi = build_phi(0.0, ytilde.approx(), 1.0, bx.sigma, sol, po);
  RegularityReport ok = verify_conjugate_regularity(phi, Ts, 1, 1e-6);
  c.expect(ok.pass, "order-1 regularity failed for sigma_target = sigma(T)(x)");
  PiecewiseSmoothMap bad = build_phi(0.0, ytilde.approx(), 1.0, bx.sigma * 1.01, sol, po);
  RegularityReport nok = verify_conjugate_regularity(bad, Ts, 1, 1e-6);
  c.expect(!nok.pass, "order-1 regularity passed with sigma_target perturbed by 1.01");
  double gap = 0.0;
  for (const auto& p : ok.points) gap = std::max(gap, p.sigma_gap);
  c.r.data["sigma_gap"] = gap;
}

// Random element of F_alpha (golden): realized boxes glued along random
// partitions with points frac(v alpha).
PLMap random_element(const SlopeSpec& s, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> vv(1, 60), nn(1, 3);
  const FieldElem alpha = FieldElem::alpha(s);
  auto partition = [&](long n) {
    std::vector<FieldElem> pts{FieldElem(s), FieldElem(s, 1L)};
    while (static_cast<long>(pts.size()) < n + 1) {
      FieldElem x = alpha * vv(rng);
      x -= FieldElem(s, mpq_class(x.floor()));
      if (std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
    }
    std::sort(pts.begin(), pts.end());
    return pts;
  };
  long n = nn(rng);
  std::vector<FieldElem> dom = partition(n), img = partition(n);
  std::vector<Segment> segs;
  for (long i = 0; i < n; ++i) {
    const auto& a = dom[static_cast<std::size_t>(i)];
    const auto& b = dom[static_cast<std::size_t>(i + 1)];
    segs.push_back(Segment{a, b, realize(a, b, img[static_cast<std::size_t>(i)], img[static_cast<std::size_t>(i + 1)])});
  }
  return glue(segs);
}

void criterion9(Ctx& c, std::mt19937_64& rng) {
  SlopeSpec s = make_alpha(1, 1);
  std::vector<PLMap> pool;
  for (int i = 0; i < 48; ++i) pool.push_back(random_element(s, rng));
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  const PLMap id = PLMap::identity(FieldElem(s), FieldElem(s, 1L));
  long checks = 0, failed = 0;
  auto check = [&](bool ok) {
    ++checks;
    failed += ok ? 0 : 1;
  };
  while (checks < 10000) {
    const PLMap& f = pool[pick(rng)];
    const PLMap& g = pool[pick(rng)];
    const PLMap& h = pool[pick(rng)];
    PLMap fg = compose(f, g);
    check(is_in_F_alpha(fg));
    check(compose(fg, h) == compose(f, compose(g, h)));
    check(compose(f, invert(f)) == id && compose(invert(f), f) == id);
    check(invert(fg) == compose(invert(g), invert(f)));
    // sigma(fg)(t) = sigma(f)(g t) sigma(g)(t) at every breakpoint of g and g^-1(breakpoints of f)
    bool cocycle = true;
    PLMap gi = invert(g);
    std::vector<FieldElem> ts;
    for (const auto& pc : g.pieces()) ts.push_back(pc.left);
    for (const auto& pc : f.pieces()) ts.push_back(gi(pc.left));
    for (const auto& t : ts) {
      if (t == FieldElem(s) || t == FieldElem(s, 1L)) continue;
      long lhs = one_sided_derivatives(fg, t).sigma_exponent;
      long rhs = one_sided_derivatives(f, g(t)).sigma_exponent + one_sided_derivatives(g, t).sigma_exponent;
      cocycle = cocycle && lhs == rhs;
    }
    check(cocycle);
  }
  c.expect(failed == 0, std::to_string(failed) + " of " + std::to_string(checks) + " group-law checks failed");
  c.r.data["checks"] = checks;
}

struct Spec {
  const char* title;
  double limit;
  void (*run)(Ctx&, std::mt19937_64&);
};

const Spec kSpecs[kCriteria] = {
    {"golden-ratio local rotation", 1.0, criterion1},
    {"local rotations for 1+sqrt2 and (3+sqrt13)/2", 1.0, criterion2},
    {"induced circle map is t + beta, jump product exponent 0", 1.0, criterion3},
    {"rotation-number digits and orbit estimate", 10.0, criterion4},
    {"Bieri-Strebel realizer grid and congruence test", 60.0, criterion5},
    {"pinned element: two fixed points with sigma != 1", 1.0, criterion6},
    {"continued fractions, PSL(2,Z) tails, Diophantine witness", 30.0, criterion7},
    {"cocycle, C2 system and C1 conjugate regularity", 10.0, criterion8},
    {"group-law property suite", 30.0, criterion9},
};

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  if (id < 1 || id > kCriteria) throw std::out_of_range("no criterion " + std::to_string(id));
  const Spec& sp = kSpecs[id - 1];
  CriterionResult r;
  r.id = id;
  r.title = sp.title;
  r.limit_seconds = sp.limit;
  r.data = json::object();
  std::mt19937_64 rng(seed + static_cast<std::uint64_t>(id));
  Ctx c{r};
  auto t0 = std::chrono::steady_clock::now();
  try {
    sp.run(c, rng);
  } catch (const std::exception& e) {
    r.failures.push_back(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.seconds >= r.limit_seconds)
    r.failures.push_back("runtime " + std::to_string(r.seconds) + " s exceeds " + std::to_string(r.limit_seconds) + " s");
  r.pass = r.failures.empty();
  return r;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int i = 1; i <= kCriteria; ++i) out.push_back(run_criterion(i, seed));
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.title << "  (" << std::fixed;
  os.precision(3);
  os << r.seconds << " s, limit " << r.limit_seconds << " s)";
  for (const auto& f : r.failures) os << "\n      - " << f;
  return os.str();
}

json to_json(const CriterionResult& r) {
  return json{{"id", r.id},           {"title", r.title},     {"pass", r.pass},
              {"seconds", r.seconds}, {"limit_seconds", r.limit_seconds},
              {"failures", r.failures}, {"data", r.data}};
}

}  // namespace plrot
