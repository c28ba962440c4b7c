#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qlambert::cli {

enum ExitCode : int { kOk = 0, kIdentityFailure = 1, kUsage = 2 };

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qlambert::cli
