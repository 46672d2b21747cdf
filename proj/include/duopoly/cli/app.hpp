#pragma once

// Command-line front end: duopoly {solve|sweep|threshold} [flags].

#include <iosfwd>

namespace duopoly::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitNoSolution = 3,
  kExitIo = 4,
};

/// Runs the tool in-process. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace duopoly::cli
