#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wslm {

/// Parses and runs one CLI invocation (arguments without the program name).
/// Returns the process exit status: 0 on success, 1 for config or runtime
/// errors (single-line diagnostic on `err`), 2 for flag errors (usage text).
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace wslm
