#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcext {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 1,
  kExitHypothesis = 2,
  kExitInternal = 3,
  kExitVerification = 4,
  kExitBudget = 5,
};

// Entry point of the command-line tool; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pcext
