#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace umod {

// Runs the command line tool on `args` (without the program name), reading
// "-" input from `in` and writing results to `out` and machine-readable
// errors to `err`. Returns the process exit code: 0 on success, 2 on parse
// or usage errors, 3 on violated operation preconditions, 1 otherwise.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace umod
