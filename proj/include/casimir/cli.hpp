#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace casimir::cli {

// Exit codes: 0 success, 1 invalid input, 2 numerical failure (rows that
// could not be computed are still written, with converged=false).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace casimir::cli
