#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcsync::cli {

enum ExitCode : int {
  kOk = 0,
  kDomainError = 1,
  kUsageError = 2,
  kBudgetExhausted = 3,
};

/// Runs one command. `args` excludes the program name. Input path `-` reads
/// from `in`.
int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                std::ostream& err);

}  // namespace pcsync::cli
