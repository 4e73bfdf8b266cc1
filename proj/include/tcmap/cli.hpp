#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tcmap::cli {

enum ExitCode { Success = 0, ValidationFailure = 1, UsageError = 2 };

/* args excludes the program name. */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tcmap::cli
