#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace llt {

enum ExitCode : int {
  kExitPass = 0,
  kExitAxiom = 2,
  kExitStructural = 3,
  kExitCapability = 4,
};

/// Runs the llt command line (args exclude the program name). Reports go to
/// out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace llt
