#pragma once

// Command-line front end. run_cli takes argv-style arguments (program name
// excluded), writes documents to `out` and diagnostics to `err`, and returns
// the process exit status: 0 on success, 1 on validation/usage errors, 2 on
// numeric failures.

#include <ostream>
#include <string>
#include <vector>

namespace thermoring {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thermoring
