#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace domlab::cli {

/// Runs one command line (without the program name). Exit codes: 0 success
/// or true, 1 property false or witness found, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace domlab::cli
