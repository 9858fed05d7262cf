#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace garrow::cli {

/// Runs one garrowc invocation. argv[0] is the program name.
/// Returns 0 on success, 1 for user errors (syntax, typing, bad values,
/// failed laws) and 2 for internal invariant violations.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace garrow::cli
