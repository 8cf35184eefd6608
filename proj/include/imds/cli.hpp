#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace imds {

/// Runs one command-line invocation (`args` excludes the program name).
/// Machine-readable results go to `out`, diagnostics to `err`.
/// Returns the process exit code: 0 on success, nonzero on any error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace imds
