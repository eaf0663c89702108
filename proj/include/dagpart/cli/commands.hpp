#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace dagpart::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInfeasible = 1,  ///< infeasible result; for verify: balance violated
  kExitInputError = 2,
  kExitInternal = 3,
  kExitCyclicQuotient = 4,  ///< verify only
};

/// Runs body and maps library exceptions to exit codes, printing the message to err.
int guarded(const std::function<int()>& body, std::ostream& err);

/// Parses argv and runs one subcommand. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload for tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dagpart::cli
