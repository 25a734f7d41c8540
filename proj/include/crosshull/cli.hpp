#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace crosshull {

enum ExitCode : int { kExitOk = 0, kExitAssertion = 1, kExitUsage = 2 };

/// The command-line front end; args excludes the program name. Reports go to
/// `out`, diagnostics and wall times to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crosshull
