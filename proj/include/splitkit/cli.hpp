#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace splitkit {

/// Entry point of the `splitkit` command. argv[0] is the program name.
/// Returns the process exit status; results go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace splitkit
