#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace frameforge {

enum ExitCode : int { kExitOk = 0, kExitDiagnostics = 1, kExitUsage = 2, kExitIo = 3 };

/// Runs one command line (without the program name). `in` stands in for
/// stdin when a file argument is "-"; `out` and `err` for stdout/stderr.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace frameforge
