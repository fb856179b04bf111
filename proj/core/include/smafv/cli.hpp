#pragma once

// Command-line front end:
//   list
//   run <name|config-file> [--out DIR] [--override key=value]...
//   equilibria --dtheta X
//   check <name|config-file> [--override key=value]... [--print-config]
// Failures print one line "error: <code>: <message>" to `err` and return a
// nonzero status. Codes: usage, unknown-scenario, bad-override-key,
// invalid-config, io, solver.

#include <iosfwd>
#include <string>
#include <vector>

namespace smafv {

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace smafv
