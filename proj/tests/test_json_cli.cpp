#include <doctest.h>

#include <sstream>

#include "plrot/cli.hpp"
#include "plrot/json_io.hpp"

using namespace plrot;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args, const std::string& input = "", int expect = 0) {
  args.push_back("--json");
  Run r = run(args, input);
  CHECK(r.code == expect);
  json j = json::parse(r.out);
  CHECK(j.at("schema") == 1);
  CHECK(j.at("exit_code") == expect);
  return j;
}

}  // namespace

TEST_CASE("round trip of maps and local rotations") {
  SlopeSpec s = make_alpha(2, 1);
  LocalRotation lr = construct_local_rotation(s);
  json j = to_json(lr);
  LocalRotation back = local_rotation_from_json(json::parse(j.dump()));
  CHECK(back.f == lr.f);
  CHECK(back.g == lr.g);
  CHECK(back.y == lr.y);
  CHECK(back.beta == lr.beta);
  CHECK(plmap_from_json(to_json(lr.f)) == lr.f);
  CHECK(lift_from_json(j) == induced_iet(lr));
  CHECK(lift_from_json(to_json(CircleLift(lr.g))) == CircleLift(lr.g));
  CHECK(parse_rational("-3/6") == mpq_class(-1, 2));
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
}

TEST_CASE("malformed JSON is rejected") {
  SlopeSpec s = make_alpha(1, 1);
  json good = to_json(PLMap::identity(FieldElem(s), FieldElem(s, 1L)));
  json gap = good;
  gap["pieces"].push_back(json{{"left", to_json(FieldElem::rational(s, 1, 2))}, {"k", 0},
                              {"b", to_json(FieldElem::rational(s, 1, 3))}});
  CHECK_THROWS_AS(plmap_from_json(gap), ParseError);
  json nofield = good;
  nofield.erase("lo");
  CHECK_THROWS_AS(plmap_from_json(nofield), ParseError);
  json badalpha = good;
  badalpha["alpha"]["q"] = 0;
  CHECK_THROWS_AS(plmap_from_json(badalpha), ParseError);
}

TEST_CASE("alpha") {
  json j = run_json({"alpha", "--p", "1", "--q", "1"});
  CHECK(j.at("discriminant") == 5);
  CHECK(j.at("unit_case") == true);
  CHECK_FALSE(j.contains("warning"));
  CHECK(run_json({"alpha", "--p", "1", "--q", "3"}).contains("warning"));
  CHECK(run({"alpha", "--p", "2", "--q", "0"}).code == 2);
  CHECK(run({"alpha", "--p", "1", "--q", "2"}).code == 2);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"alpha", "--p"}).code == 2);
  CHECK(run({"bieri-strebel", "check", "--p", "1", "--q", "1", "--a", "x"}).code == 2);
  CHECK(run({"alpha", "--help"}).code == 0);
}

TEST_CASE("build and verify pipeline") {
  Run b = run({"local-rotation", "build", "--p", "1", "--q", "1"});
  REQUIRE(b.code == 0);
  json v = run_json({"local-rotation", "verify"}, b.out);
  CHECK(v.at("angle").at("a") == "2");
  CHECK(v.at("angle").at("b") == "-1");
  for (const auto& c : v.at("checks")) CHECK(c.at("pass") == true);

  json lr = json::parse(b.out);
  lr["x"] = to_json(FieldElem(make_alpha(1, 1), 0L));
  run_json({"local-rotation", "verify"}, lr.dump(), 1);

  json broken = json::parse(b.out);
  broken["f"]["pieces"][1]["b"]["a"] = "7";
  CHECK(run({"local-rotation", "verify"}, broken.dump()).code == 2);
  CHECK(run({"local-rotation", "verify"}, "{not json").code == 2);
}

TEST_CASE("bieri-strebel") {
  json c = run_json({"bieri-strebel", "check", "--p", "2", "--q", "1", "--a", "0", "--c", "1", "--a2", "0",
                     "--c2", "2"},
                    "", 1);
  CHECK(c.at("congruent") == false);
  json r = run_json({"bieri-strebel", "realize", "--p", "1", "--q", "1", "--a", "0", "--c", "1", "--a2", "0",
                     "--c2", "0:1"});
  CHECK(r.at("postconditions") == true);
  PLMap f = plmap_from_json(r.at("map"));
  SlopeSpec s = make_alpha(1, 1);
  CHECK(f(FieldElem(s, 1L)) == FieldElem::alpha(s));
}

TEST_CASE("rot-number and cf") {
  Run b = run({"local-rotation", "build"});
  json j = run_json({"rot-number", "--depth", "8"}, b.out);
  CHECK(j.at("digits") == json::array({0, 2, 1, 1, 1, 1, 1, 1}));
  json o = run_json({"rot-number", "--method", "orbit", "--n", "1000"}, b.out);
  CHECK(o.at("method") == "orbit");
  json cf = run_json({"cf", "--surd", "0,1,31"});
  CHECK(cf.at("cf").at("period") == json::array({1, 1, 3, 5, 3, 1, 1, 10}));
  CHECK(cf.at("bounded_type").at("M") == 10);
  json g = run_json({"cf", "--p", "1", "--q", "1"});
  CHECK(g.at("cf").at("preperiod") == json::array({1}));
  CHECK(run({"cf", "--surd", "1,2,9"}).code == 2);
}

TEST_CASE("smooth verify") {
  json j = run_json({"smooth", "verify", "--p", "1", "--q", "1"});
  CHECK(j.at("jump_exponent") == 0);
  run_json({"smooth", "verify", "--p", "1", "--q", "1", "--sigma-scale", "1.01"}, "", 1);
}
