#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace plasmon::cli {

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Data goes to `out` when no --out path is set; diagnostics go
/// to `err`. Returns the process exit code (0 ok, 1 failure, 2 bad input).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plasmon::cli
