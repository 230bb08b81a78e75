// Command-line front end. Exit codes: 0 success, 1 failed verification,
// 2 usage or parse error.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace plrot {

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace plrot
