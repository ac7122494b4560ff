#pragma once

#include <string>
#include <vector>

namespace pkit {

enum ExitCode {
  kExitOk = 0,
  kExitParse = 2,         // malformed expression or command line
  kExitPrecondition = 3,  // input outside an operation's domain
  kExitNumeric = 4,       // numeric validation failed or disagreed with the prediction
  kExitInternal = 5,      // an internal invariant failed
};

struct CommandResult {
  int status = kExitOk;
  std::string out;
  std::string err;
};

/// Runs one command line; args excludes the program name.
CommandResult run_command(const std::vector<std::string>& args);

}  // namespace pkit
