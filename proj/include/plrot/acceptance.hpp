// The acceptance suite, shared by the acceptance test binary and `selftest`.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plrot/json_io.hpp"

namespace plrot {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  double seconds = 0.0;
  double limit_seconds = 0.0;
  std::vector<std::string> failures;  // empty when every sub-check passed
  json data;
};

inline constexpr int kCriteria = 9;

CriterionResult run_criterion(int id, std::uint64_t seed);
std::vector<CriterionResult> run_acceptance(std::uint64_t seed);

// "PASS  3  induced circle map ...  (0.012 s / 1 s)"
std::string format_line(const CriterionResult& r);
json to_json(const CriterionResult& r);

}  // namespace plrot
