#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adic {

/// Runs the command line `args` (without the program name). Returns 0 on
/// success, 1 on parse or usage errors, 2 on errors raised by a computation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adic
