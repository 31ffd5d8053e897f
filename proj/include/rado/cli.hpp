#pragma once

#include <ostream>
#include <span>
#include <string>

namespace rado::cli {

enum ExitStatus : int {
  kOk = 0,
  kNegative = 1,  // NotWitness, Exhausted, failed verification
  kUsage = 2,     // bad flags or domain errors
};

/// Runs one command line (without the program name) and returns the exit
/// status. Reports go to out, diagnostics to err.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace rado::cli
