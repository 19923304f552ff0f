#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dyckctl {

/// Runs one dyckctl invocation; `args` excludes the program name.
/// Returns 0 when every verdict passes, 1 on a failing verdict, 2 on a
/// usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dyckctl
