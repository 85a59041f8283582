// Command-line front end, callable in-process for tests.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wqs::cli {

// exit codes: 0 success, 1 verification failure, 2 input or schema error
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wqs::cli
