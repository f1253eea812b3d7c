#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace slantpath {

/// Exit codes: 0 success, 1 domain/validation error, 2 usage error.
/// Machine-readable output goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace slantpath
