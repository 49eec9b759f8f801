#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dsamp::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInputError = 2,
  kBudgetExhausted = 3,
  kSizeCap = 4,
};

/// Runs one `dsamp` invocation; args exclude the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace dsamp::cli
