#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wafm {

/// Exit codes: 0 when the verdict is true (or the input is valid), 1 when it
/// is false, 2 for usage and input errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wafm
