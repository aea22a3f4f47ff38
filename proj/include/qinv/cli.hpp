#pragma once

#include <string>
#include <vector>

namespace qinv::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,  // unknown subcommand, bad flags
  kMalformedInput = 3,
  kInvalidFiber = 4,
  kNotInvertible = 5,
  kDomainError = 6,
  kPreconditionViolated = 7,
  kUnsupportedInput = 8,
  kNumericInconsistency = 9,
  kOverflow = 10,
};

struct CommandResult {
  int exit_code = kOk;
  std::string out;  // stdout payload
  std::string err;  // stderr text
};

/// Parses argv (argv[0] is the program name) and runs one subcommand.
CommandResult run(const std::vector<std::string>& argv);

}  // namespace qinv::cli
