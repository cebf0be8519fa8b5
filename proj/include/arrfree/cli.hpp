#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace arrfree {

/// Runs one CLI invocation. Returns the process exit code: 0 on success,
/// 1 when a predicate-style query is mathematically false/None/Unknown,
/// 2 on errors (reported on `err` as a machine-readable JSON line).
int run_command(const std::vector<std::string>& args, std::ostream& out = std::cout,
                std::ostream& err = std::cerr);

}  // namespace arrfree
