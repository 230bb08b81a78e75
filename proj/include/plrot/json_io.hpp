// JSON forms of field elements, PL maps, lifts and local rotations.
// Exact values travel as decimal strings "n" or "n/d"; "approx" fields are
// informational and ignored on input.

#pragma once

#include <json.hpp>
#include <stdexcept>

#include "plrot/circle.hpp"
#include "plrot/diophantine.hpp"
#include "plrot/local_rotation.hpp"

namespace plrot {

using json = nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kSchemaVersion = 1;

json to_json(const SlopeSpec& s);
json to_json(const FieldElem& x);
json to_json(const PLMap& f);
json to_json(const CircleLift& f);
json to_json(const LocalRotation& lr);
json to_json(const CFExpansion& cf);
json to_json(const QuadraticSurd& s);

SlopeSpec spec_from_json(const json& j);
FieldElem elem_from_json(const json& j, const SlopeSpec& s);
PLMap plmap_from_json(const json& j);
// Accepts {"lift": {...}} documents, bare lifts and a local rotation (its induced map).
CircleLift lift_from_json(const json& j);
LocalRotation local_rotation_from_json(const json& j);

std::string rational_string(const mpq_class& q);
mpq_class parse_rational(const std::string& s);

}  // namespace plrot
