#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace epme::cli {

/// Runs one command line (without the program name).
/// Exit codes: 0 success, 1 verification or path failure, 2 bad input or configuration.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace epme::cli
