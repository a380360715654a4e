#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "isoppp/error.hpp"

namespace isoppp::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNonConvergence = 3,
  kExitDivergent = 4,
};

int exit_code_for(ErrorKind kind) noexcept;

// Entry point behind main(); args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isoppp::cli
