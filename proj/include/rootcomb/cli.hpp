#pragma once

#include <string>
#include <vector>

namespace rootcomb::cli {

struct Outcome {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs one invocation; `args` excludes the program name.
/// Exit codes: 0 success, 2 input or capacity error, 3 internal invariant violation.
Outcome run(const std::vector<std::string>& args);

}  // namespace rootcomb::cli
