#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dqv::cli {

// Parses and runs one command line (program name already stripped). All
// output, diagnostics included, goes to `out`. Returns the process exit
// code: 0 success or all checks passed, 1 invalid input, 2 infeasible
// parameters under --strict, 3 size guard tripped, 4 a bound check failed.
int run_cli(std::vector<std::string> args, std::ostream& out);

} // namespace dqv::cli
