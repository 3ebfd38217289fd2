#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bcp {

enum ExitCode : int { kExitOk = 0, kExitInternal = 1, kExitUsage = 2, kExitFailed = 3 };

/// Runs one command line (without the program name) and returns its exit code.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bcp
