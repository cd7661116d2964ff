#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace permlab {

/// Runs the permlab command line with `args` (excluding the program name).
/// Data goes to `out`, diagnostics to `err`. Returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

const char* version();

}  // namespace permlab
