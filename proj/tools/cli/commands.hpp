#pragma once

#include <ostream>
#include <span>
#include <string>

namespace ces::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 2,
  kContradiction = 3,
};

/// Runs one command line (without the program name). Normal output goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ces::cli
