#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wsd::cli {

/// Runs the command line `args` (without the program name). Returns the
/// process exit code: 0 success, 1 assertion failure, 2 usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wsd::cli
