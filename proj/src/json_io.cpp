#include "plrot/json_io.hpp"

namespace plrot {

std::string rational_string(const mpq_class& q) { return q.get_str(); }

mpq_class parse_rational(const std::string& str) {
  mpq_class q;
  if (str.empty() || q.set_str(str, 10) != 0) throw ParseError("bad rational '" + str + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + str + "'");
  q.canonicalize();
  return q;
}

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

mpq_class rational_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return mpq_class(v.get<long>());
  throw ParseError(std::string("field '") + key + "' must be an exact string or integer");
}

long long_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer");
  return v.get<long>();
}

}  // namespace

json to_json(const SlopeSpec& s) { return json{{"p", s.p}, {"q", s.q}, {"approx", s.approx()}}; }

json to_json(const FieldElem& x) {
  return json{{"a", rational_string(x.a())}, {"b", rational_string(x.b())}, {"approx", x.approx()}};
}

json to_json(const PLMap& f) {
  json pieces = json::array();
  for (const auto& pc : f.pieces())
    pieces.push_back(json{{"left", to_json(pc.left)}, {"k", pc.k}, {"b", to_json(pc.b)}});
  return json{{"alpha", to_json(f.spec())}, {"lo", to_json(f.lo())}, {"hi", to_json(f.hi())}, {"pieces", pieces}};
}

json to_json(const CircleLift& f) { return json{{"lift", to_json(f.base())}}; }

json to_json(const LocalRotation& lr) {
  return json{{"alpha", to_json(lr.spec)}, {"k", lr.k},
              {"y", to_json(lr.y)},        {"x", to_json(lr.x)},
              {"z", to_json(lr.z)},        {"epsilon", to_json(lr.epsilon)},
              {"beta1", to_json(lr.beta1)}, {"beta2", to_json(lr.beta2)},
              {"beta", to_json(lr.beta)},  {"f", to_json(lr.f)},
              {"g", to_json(lr.g)}};
}

json to_json(const CFExpansion& cf) { return json{{"preperiod", cf.preperiod}, {"period", cf.period}}; }

json to_json(const QuadraticSurd& s) {
  return json{{"P", s.P.get_str()}, {"Q", s.Q.get_str()}, {"D", s.D.get_str()}, {"approx", s.approx()}};
}

SlopeSpec spec_from_json(const json& j) {
  try {
    return make_alpha(long_field(j, "p"), long_field(j, "q"));
  } catch (const FieldError& e) {
    throw ParseError(std::string("alpha: ") + e.what());
  }
}

FieldElem elem_from_json(const json& j, const SlopeSpec& s) {
  return FieldElem(s, rational_field(j, "a"), rational_field(j, "b"));
}

PLMap plmap_from_json(const json& j) {
  SlopeSpec s = spec_from_json(field(j, "alpha"));
  const json& arr = field(j, "pieces");
  if (!arr.is_array()) throw ParseError("'pieces' must be an array");
  std::vector<Piece> pieces;
  for (const auto& pj : arr)
    pieces.push_back(Piece{elem_from_json(field(pj, "left"), s), long_field(pj, "k"), elem_from_json(field(pj, "b"), s)});
  try {
    return PLMap(elem_from_json(field(j, "lo"), s), elem_from_json(field(j, "hi"), s), std::move(pieces));
  } catch (const PLMapError& e) {
    throw ParseError(std::string("not a PL homeomorphism: ") + e.what());
  }
}

CircleLift lift_from_json(const json& j) {
  try {
    if (j.is_object() && j.contains("lift")) return CircleLift(plmap_from_json(j.at("lift")));
    if (j.is_object() && j.contains("f") && j.contains("g")) return induced_iet(local_rotation_from_json(j));
    return CircleLift(plmap_from_json(j));
  } catch (const CircleError& e) {
    throw ParseError(std::string("not a circle lift: ") + e.what());
  } catch (const LocalRotationError& e) {
    throw ParseError(std::string("local rotation: ") + e.what());
  }
}

LocalRotation local_rotation_from_json(const json& j) {
  SlopeSpec s = spec_from_json(field(j, "alpha"));
  auto e = [&](const char* key) { return elem_from_json(field(j, key), s); };
  PLMap f = plmap_from_json(field(j, "f"));
  PLMap g = plmap_from_json(field(j, "g"));
  if (!(f.spec() == s) || !(g.spec() == s)) throw ParseError("f and g must use the rotation's alpha");
  return LocalRotation{s, long_field(j, "k"), e("y"), e("x"), e("z"), e("epsilon"),
                       e("beta1"), e("beta2"), e("beta"), std::move(f), std::move(g)};
}

}  // namespace plrot
