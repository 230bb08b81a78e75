// One line per acceptance criterion; exit status 1 if any fails.

#include <cstdlib>
#include <iostream>

#include "plrot/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20240611;
  int failed = 0;
  for (int i = 1; i <= plrot::kCriteria; ++i) {
    plrot::CriterionResult r = plrot::run_criterion(i, seed);
    std::cout << plrot::format_line(r) << std::endl;
    failed += r.pass ? 0 : 1;
  }
  std::cout << (plrot::kCriteria - failed) << "/" << plrot::kCriteria << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
