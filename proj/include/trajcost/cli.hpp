#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trajcost {

/// Command-line entry point (testable without spawning a process).
/// Exit codes: 0 success, 2 usage, 3 parse/file error, 4 no feasible
/// candidate, 5 missing evaluation context, 1 anything else.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace trajcost
