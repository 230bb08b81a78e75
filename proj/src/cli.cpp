#include "plrot/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "plrot/acceptance.hpp"
#include "plrot/smoothing.hpp"

namespace plrot {

namespace {

// Raised for bad values that CLI11 cannot see (file contents, field syntax).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "u" or "u:v" with rationals u, v, meaning u + v alpha.
FieldElem parse_elem(const std::string& text, const SlopeSpec& s) {
  auto colon = text.find(':');
  try {
    if (colon == std::string::npos) return FieldElem(s, parse_rational(text), mpq_class(0));
    return FieldElem(s, parse_rational(text.substr(0, colon)), parse_rational(text.substr(colon + 1)));
  } catch (const ParseError& e) {
    throw UsageError("bad field element '" + text + "' (expected u or u:v for u + v*alpha): " + e.what());
  }
}

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream ss;
  if (path.empty() || path == "-") {
    ss << in.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open input file '" + path + "'");
    ss << f.rdbuf();
  }
  return ss.str();
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("input is not valid JSON: ") + e.what());
  }
}

void write_csv(const std::string& path, const std::string& header, const std::vector<std::vector<double>>& rows) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f.precision(17);
  f << header << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) f << (i ? "," : "") << r[i];
    f << "\n";
  }
}

// Human-readable rendering of a report.
bool is_elem(const json& j) { return j.is_object() && j.size() == 3 && j.contains("a") && j.contains("b") && j.contains("approx"); }

std::string elem_text(const json& j) {
  std::ostringstream os;
  std::string a = j["a"], b = j["b"];
  if (b == "0") {
    os << a;
  } else {
    if (a != "0") os << a << " + ";
    os << (b == "1" ? "" : "(" + b + ")*") << "alpha";
  }
  os << "  (~ " << j["approx"].get<double>() << ")";
  return os.str();
}

void render(std::ostream& os, const json& j, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const json& v = it.value();
      if (is_elem(v)) {
        os << pad << it.key() << ": " << elem_text(v) << "\n";
      } else if (v.is_object() || (v.is_array() && !v.empty() && (v[0].is_object() || v[0].is_array()))) {
        os << pad << it.key() << ":\n";
        render(os, v, indent + 2);
      } else {
        os << pad << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (is_elem(v)) {
        os << pad << "- " << elem_text(v) << "\n";
      } else if (v.is_object() || v.is_array()) {
        os << pad << "-\n";
        render(os, v, indent + 2);
      } else {
        os << pad << "- " << v.dump() << "\n";
      }
    }
  } else {
    os << pad << j.dump() << "\n";
  }
}

struct Output {
  json report = json::object();
  int code = 0;
};

Output cmd_alpha(long p, long q) {
  SlopeSpec s = make_alpha(p, q);
  FieldElem a = FieldElem::alpha(s);
  Output o;
  o.report["alpha"] = to_json(s);
  o.report["minimal_polynomial"] = "x^2 - " + std::to_string(p) + "x - " + std::to_string(q);
  o.report["discriminant"] = s.discriminant();
  o.report["unit_case"] = s.unit_case;
  o.report["ring_A"] = s.unit_case ? "Z[alpha]" : "Z[alpha][1/" + std::to_string(std::abs(q)) + "]";
  o.report["ideal_index"] = s.ideal_modulus();
  o.report["alpha_value"] = to_json(a);
  o.report["alpha_inverse"] = to_json(a.inverse());
  o.report["conjugate"] = to_json(a.conjugate());
  o.report["norm"] = rational_string(a.norm());
  o.report["surd"] = to_json(surd_of(a));
  return o;
}

Output cmd_bs(bool do_realize, long p, long q, const std::string& a, const std::string& c, const std::string& a2,
              const std::string& c2) {
  SlopeSpec s = make_alpha(p, q);
  FieldElem ea = parse_elem(a, s), ec = parse_elem(c, s), ea2 = parse_elem(a2, s), ec2 = parse_elem(c2, s);
  Output o;
  o.report["alpha"] = to_json(s);
  o.report["box"] = json::array({to_json(ea), to_json(ec)});
  o.report["target"] = json::array({to_json(ea2), to_json(ec2)});
  bool ok;
  try {
    ok = bs_check(ea, ec, ea2, ec2);
  } catch (const RealizeError& e) {
    throw UsageError(e.what());
  }
  o.report["defect"] = to_json((ec2 - ea2) - (ec - ea));
  o.report["congruent"] = ok;
  if (!do_realize) {
    o.code = ok ? 0 : 1;
    return o;
  }
  if (!ok) {
    o.report["realized"] = false;
    o.report["reason"] = "lengths are not congruent modulo (alpha - 1)A";
    o.code = 1;
    return o;
  }
  RealizationPlan plan{FieldElem(s), FieldElem(s), 0, {}, 0};
  try {
    PLMap f = realize(ea, ec, ea2, ec2, {}, &plan);
    bool post = f(ea) == ea2 && f(ec) == ec2;
    for (const auto& pc : f.pieces()) post = post && in_ring_A(pc.left) && in_ring_A(pc.b);
    o.report["realized"] = true;
    o.report["postconditions"] = post;
    o.report["prescale"] = plan.prescale;
    json moves = json::array();
    for (const auto& m : plan.moves) moves.push_back(json{{"exponent", m.exponent}, {"count", m.count}});
    o.report["moves"] = moves;
    o.report["rewrites"] = plan.rewrites;
    o.report["map"] = to_json(f);
    o.code = post ? 0 : 1;
  } catch (const RealizeError& e) {
    o.report["realized"] = false;
    o.report["reason"] = e.what();
    o.code = 1;
  }
  return o;
}

json report_json(const RotationReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks) checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return checks;
}

Output cmd_lr_verify(const std::string& input, std::istream& in) {
  json j = parse_json_text(read_input(input, in));
  LocalRotation lr = [&] {
    try {
      return local_rotation_from_json(j);
    } catch (const std::exception& e) {
      throw UsageError(std::string("bad local rotation: ") + e.what());
    }
  }();
  RotationReport rep = verify(lr);
  Output o;
  o.report["alpha"] = to_json(lr.spec);
  o.report["checks"] = report_json(rep);
  std::size_t def = 0;
  for (std::size_t i = 0; i < 4 && i < rep.checks.size(); ++i) def += rep.checks[i].pass ? 1 : 0;
  o.report["definition_checks"] = std::to_string(def) + "/4";
  o.report["passed"] = std::to_string(rep.passed()) + "/" + std::to_string(rep.checks.size());
  if (rep.angle) o.report["angle"] = to_json(*rep.angle);
  o.report["jump_exponent"] = jump_product(lr);
  o.code = rep.all_pass() ? 0 : 1;
  return o;
}

Output cmd_lr_build(long p, long q, const std::string& y) {
  SlopeSpec s = make_alpha(p, q);
  std::optional<FieldElem> yy;
  if (!y.empty()) yy = parse_elem(y, s);
  LocalRotation lr = [&] {
    try {
      return construct_local_rotation(s, yy);
    } catch (const LocalRotationError& e) {
      throw UsageError(e.what());
    }
  }();
  Output o;
  o.report = to_json(lr);
  return o;
}

CircleLift lift_from_input(const std::string& input, std::istream& in) {
  json j = parse_json_text(read_input(input, in));
  try {
    return lift_from_json(j);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad circle map: ") + e.what());
  }
}

json fraction_json(const Fraction& f) { return json{{"num", f.num}, {"den", f.den}, {"approx", f.value()}}; }

Output cmd_rot(const std::string& input, std::istream& in, int depth, const std::string& method, long n,
               const std::string& out_csv) {
  CircleLift T = lift_from_input(input, in);
  Output o;
  o.report["lift"] = to_json(T);
  if (method == "cf") {
    RotationNumberResult r = rotation_number_cf(T, depth);
    o.report["method"] = "cf";
    o.report["kind"] = r.kind == RotationNumberResult::Kind::rational ? "rational" : "irrational_enclosure";
    o.report["integer_part"] = r.integer_part;
    o.report["digits"] = r.digits;
    o.report["lower"] = fraction_json(r.lower);
    o.report["upper"] = fraction_json(r.upper);
    if (r.witness) o.report["witness"] = to_json(*r.witness);
    o.report["comparisons"] = r.comparisons;
  } else {
    std::vector<std::pair<long, double>> samples;
    OrbitEstimate e = rotation_number_orbit(T, n, FieldElem(T.spec()), out_csv.empty() ? nullptr : &samples);
    o.report["method"] = "orbit";
    o.report["n"] = e.n;
    o.report["translation"] = e.translation;
    o.report["rotation"] = e.rotation;
    o.report["error_bound"] = e.error_bound;
    if (!out_csv.empty()) {
      std::vector<std::vector<double>> rows;
      for (auto& [i, x] : samples) rows.push_back({static_cast<double>(i), x});
      write_csv(out_csv, "n,x", rows);
      o.report["csv"] = out_csv;
    }
  }
  ClassPCertificate cp = class_P_certificate(T);
  o.report["class_P"] = json{{"in_class_p", cp.in_class_p}, {"variation_log_slope", cp.variation}};
  return o;
}

Output cmd_cf(std::optional<long> p, std::optional<long> q, const std::string& surd, const std::string& delta,
              long qmax, int ndigits) {
  QuadraticSurd s;
  if (!surd.empty()) {
    std::vector<std::string> parts;
    std::stringstream ss(surd);
    for (std::string t; std::getline(ss, t, ',');) parts.push_back(t);
    if (parts.size() != 3) throw UsageError("--surd expects P,Q,D");
    try {
      s = make_surd(mpz_class(parts[0]), mpz_class(parts[1]), mpz_class(parts[2]));
    } catch (const std::invalid_argument&) {
      throw UsageError("--surd entries must be integers");
    } catch (const SurdError& e) {
      throw UsageError(e.what());
    }
  } else if (p && q) {
    s = surd_of(FieldElem::alpha(make_alpha(*p, *q)));
  } else {
    throw UsageError("cf needs --p and --q, or --surd P,Q,D");
  }
  mpq_class d;
  try {
    d = parse_rational(delta);
  } catch (const ParseError& e) {
    throw UsageError(std::string("--delta: ") + e.what());
  }
  if (sgn(d) < 0) throw UsageError("--delta must be nonnegative");
  CFExpansion cf = cf_expand(s);
  BoundedType bt = is_bounded_type(cf);
  DiophantineWitness w = diophantine_witness(s, d, qmax);
  Output o;
  o.report["surd"] = to_json(s);
  o.report["cf"] = to_json(cf);
  o.report["digits"] = cf.digits(static_cast<std::size_t>(ndigits));
  o.report["bounded_type"] = json{{"bounded", bt.bounded}, {"M", bt.max_quotient}};
  o.report["witness"] = json{{"lower_bound", rational_string(w.lower_bound)},
                             {"approx", w.lower_bound.get_d()},
                             {"p", w.p_at_min.get_str()},
                             {"q", w.q_at_min.get_str()},
                             {"delta", rational_string(w.delta)},
                             {"range", "convergents with q <= " + std::to_string(qmax)},
                             {"convergents_checked", w.convergents_checked},
                             {"note", "certified on the stated range only; bounded type gives a positive infimum "
                                      "for every delta > 0"}};
  return o;
}

json point_json(const RegularityPoint& p) {
  return json{{"point", p.point},         {"d_left", p.d_left}, {"d_right", p.d_right},
              {"sigma_gap", p.sigma_gap}, {"n_left", p.n_left}, {"n_right", p.n_right},
              {"n_gap", p.n_gap},         {"error_estimate", p.error_estimate}, {"pass", p.pass}};
}

Output cmd_smooth(const std::string& input, std::istream& in, long p, long q, int order, double tol,
                  double sigma_scale, double phi_mid, const std::string& out_csv) {
  LocalRotation lr = [&] {
    if (input.empty()) return construct_local_rotation(make_alpha(p, q));
    json j = parse_json_text(read_input(input, in));
    try {
      return local_rotation_from_json(j);
    } catch (const std::exception& e) {
      throw UsageError(std::string("bad local rotation: ") + e.what());
    }
  }();
  FieldElem ytilde = (lr.y - lr.x) / (lr.z - lr.x);
  CircleLift T = induced_iet(lr);
  BreakData bx = circle_break_data(T, FieldElem(lr.spec));
  BreakData by = circle_break_data(T, ytilde);
  C2Solution sol = solve_c2_system(bx, by);
  Output o;
  o.report["alpha"] = to_json(lr.spec);
  o.report["jump_exponent"] = jump_product(lr);
  o.report["sigma_T_x"] = json{{"exponent", *bx.exponent}, {"approx", bx.sigma}};
  o.report["sigma_T_y"] = json{{"exponent", *by.exponent}, {"approx", by.sigma}};
  o.report["c2_system"] = json{{"consistent", sol.consistent}, {"n_minus", sol.n_minus}, {"n_plus", sol.n_plus},
                               {"rhs_x", sol.rhs_x},          {"rhs_y", sol.rhs_y},      {"rank", sol.rank}};
  if (!sol.consistent) {
    o.code = 1;
    return o;
  }
  PhiOptions po;
  po.d_mid = phi_mid;
  double target = bx.sigma * sigma_scale;
  PiecewiseSmoothMap phi = build_phi(0.0, ytilde.approx(), 1.0, target, sol, po);
  PiecewiseSmoothMap Ts = to_smooth(T);
  RegularityReport rep = verify_conjugate_regularity(phi, Ts, order, tol);
  o.report["sigma_target"] = target;
  o.report["order"] = order;
  o.report["tol"] = tol;
  json pts = json::array();
  for (const auto& pt : rep.points) pts.push_back(point_json(pt));
  o.report["points"] = pts;
  o.report["resolution_ok"] = rep.resolution_ok;
  if (!rep.note.empty()) o.report["note"] = rep.note;
  o.report["pass"] = rep.pass;
  if (!out_csv.empty()) {
    std::vector<std::vector<double>> rows;
    for (const auto& r : conjugate_profile(phi, Ts, 1000)) rows.push_back({r[0], r[1], r[2]});
    write_csv(out_csv, "u,C,DC", rows);
    o.report["csv"] = out_csv;
  }
  o.code = rep.pass ? 0 : 1;
  return o;
}

Output cmd_selftest(std::uint64_t seed, std::ostream& progress, bool json_mode) {
  Output o;
  json results = json::array();
  bool all = true;
  for (int i = 1; i <= kCriteria; ++i) {
    CriterionResult r = run_criterion(i, seed);
    if (!json_mode) progress << format_line(r) << std::endl;
    results.push_back(to_json(r));
    all = all && r.pass;
  }
  o.report["seed"] = seed;
  o.report["criteria"] = results;
  o.report["pass"] = all;
  o.code = all ? 0 : 1;
  return o;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact PL maps with slopes in <alpha>, local rotations and circle dynamics", "plrot"};
  app.require_subcommand(1);
  bool json_mode = false;
  app.add_flag("--json", json_mode, "JSON output");

  long p = 1, q = 1;
  auto add_pq = [&](CLI::App* sc) {
    sc->add_option("--p", p, "alpha^2 = p alpha + q")->capture_default_str();
    sc->add_option("--q", q)->capture_default_str();
    sc->add_flag("--json", json_mode, "JSON output");
  };

  auto* alpha = app.add_subcommand("alpha", "quadratic slope data");
  add_pq(alpha);

  auto* bs = app.add_subcommand("bieri-strebel", "boxes [a, c] -> [a2, c2]");
  bs->require_subcommand(1);
  std::string a, c, a2, c2;
  auto box_opts = [&](CLI::App* sc) {
    add_pq(sc);
    sc->add_option("--a", a, "u or u:v for u + v*alpha")->required();
    sc->add_option("--c", c)->required();
    sc->add_option("--a2", a2)->required();
    sc->add_option("--c2", c2)->required();
  };
  auto* bs_check_cmd = bs->add_subcommand("check", "congruence test");
  box_opts(bs_check_cmd);
  auto* bs_realize_cmd = bs->add_subcommand("realize", "construct the PL map");
  box_opts(bs_realize_cmd);

  auto* lr = app.add_subcommand("local-rotation", "local rotations (y; f, g)");
  lr->require_subcommand(1);
  std::string y, input;
  auto* lr_build = lr->add_subcommand("build", "construct");
  add_pq(lr_build);
  lr_build->add_option("--y", y, "u or u:v; default frac(alpha)");
  auto* lr_verify = lr->add_subcommand("verify", "check a serialized local rotation");
  lr_verify->add_option("--input", input, "file, default stdin");
  lr_verify->add_flag("--json", json_mode);

  auto* rot = app.add_subcommand("rot-number", "rotation number of a lift");
  int depth = 12;
  std::string method = "cf", out_csv;
  long n = 10000;
  rot->add_option("--input", input, "lift or local rotation JSON, default stdin");
  rot->add_option("--depth", depth)->capture_default_str()->check(CLI::Range(1, 200));
  rot->add_option("--method", method)->check(CLI::IsMember({"cf", "orbit"}))->capture_default_str();
  rot->add_option("--n", n, "orbit length")->capture_default_str()->check(CLI::Range(1L, 100000000L));
  rot->add_option("--out", out_csv, "orbit CSV");
  rot->add_flag("--json", json_mode);

  auto* cf = app.add_subcommand("cf", "continued fraction of a quadratic surd");
  std::optional<long> cp, cq;
  std::string surd, delta = "0";
  long qmax = 100;
  int ndigits = 20;
  cf->add_option("--p", cp);
  cf->add_option("--q", cq);
  cf->add_option("--surd", surd, "P,Q,D for (P + sqrt D)/Q");
  cf->add_option("--delta", delta, "rational >= 0")->capture_default_str();
  cf->add_option("--qmax", qmax)->capture_default_str()->check(CLI::Range(2L, 1000000000L));
  cf->add_option("--digits", ndigits)->capture_default_str()->check(CLI::Range(1, 10000));
  cf->add_flag("--json", json_mode);

  auto* sm = app.add_subcommand("smooth", "smoothing of the induced circle map");
  sm->require_subcommand(1);
  auto* sm_verify = sm->add_subcommand("verify", "C1 / C2 check of phi T phi^-1");
  int order = 1;
  double tol = 1e-6, sigma_scale = 1.0, phi_mid = 1.25;
  add_pq(sm_verify);
  sm_verify->add_option("--input", input, "local rotation JSON (default: build from --p --q)");
  sm_verify->add_option("--order", order)->check(CLI::IsMember({1, 2}))->capture_default_str();
  sm_verify->add_option("--tol", tol)->capture_default_str()->check(CLI::PositiveNumber);
  sm_verify->add_option("--sigma-scale", sigma_scale, "perturb sigma_target")->capture_default_str()->check(CLI::PositiveNumber);
  sm_verify->add_option("--phi-mid", phi_mid, "Dphi at the interior fixed point")->capture_default_str()->check(CLI::PositiveNumber);
  sm_verify->add_option("--out", out_csv, "CSV of the conjugate's derivative profile");

  auto* st = app.add_subcommand("selftest", "run the acceptance suite");
  std::uint64_t seed = 20240611;
  st->add_option("--seed", seed)->capture_default_str();
  st->add_flag("--json", json_mode);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  std::string command;
  for (const auto& s : args) command += (command.empty() ? "" : " ") + s;
  auto t0 = std::chrono::steady_clock::now();
  Output o;
  try {
    if (alpha->parsed()) {
      o = cmd_alpha(p, q);
    } else if (bs_check_cmd->parsed() || bs_realize_cmd->parsed()) {
      o = cmd_bs(bs_realize_cmd->parsed(), p, q, a, c, a2, c2);
    } else if (lr_build->parsed()) {
      o = cmd_lr_build(p, q, y);
    } else if (lr_verify->parsed()) {
      o = cmd_lr_verify(input, in);
    } else if (rot->parsed()) {
      o = cmd_rot(input, in, depth, method, n, out_csv);
    } else if (cf->parsed()) {
      o = cmd_cf(cp, cq, surd, delta, qmax, ndigits);
    } else if (sm_verify->parsed()) {
      o = cmd_smooth(input, in, p, q, order, tol, sigma_scale, phi_mid, out_csv);
    } else if (st->parsed()) {
      o = cmd_selftest(seed, out, json_mode);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const FieldError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const SurdError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json doc = json::object();
  doc["schema"] = kSchemaVersion;
  doc["command"] = command;
  doc["exit_code"] = o.code;
  doc["seconds"] = secs;
  const json* aj = nullptr;
  if (o.report.contains("alpha")) aj = &o.report["alpha"];
  else if (o.report.contains("lift")) aj = &o.report["lift"]["lift"]["alpha"];
  if (aj && aj->contains("q") && std::abs(aj->at("q").get<long>()) != 1)
    doc["warning"] = "experimental: non-unit q, A is taken as Z[alpha][1/q], which may be larger than Z[alpha, alpha^-1]";
  for (auto it = o.report.begin(); it != o.report.end(); ++it) doc[it.key()] = it.value();
  if (json_mode || lr_build->parsed()) {
    out << doc.dump(2) << "\n";
  } else if (!st->parsed()) {
    render(out, doc, 0);
  } else {
    out << (o.code == 0 ? "all criteria passed" : "some criteria failed") << "\n";
  }
  return o.code;
}

}  // namespace plrot
