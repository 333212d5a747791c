#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kclab {

// Exit codes: 0 success, 1 input/usage error, 2 property violation.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace kclab
