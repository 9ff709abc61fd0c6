#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace amoeba::cli {

enum ExitCode : int {
  kOk = 0,
  kUsageError = 1,      // bad flags, unreadable inputs, invalid configuration
  kBudgetExhausted = 2  // solve found no tour within max_iters
};

/// Entry point shared by the binary and the tests. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace amoeba::cli
