#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gclab {

// Command-line driver behind the gclab binary, exposed for testing. `args`
// excludes the program name. Returns the process exit code: 0 success,
// 1 input or validation failure, 2 mathematical negative, 3 I/O failure or
// cap exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gclab
