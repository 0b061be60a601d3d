#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace freeconv {

/// Runs one command line (args excludes the program name) and returns the exit code:
/// 0 pass/Inconclusive, 1 Rejected or statistical failure, 2 input error, 3 computation error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace freeconv
