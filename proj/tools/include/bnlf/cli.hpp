#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bnlf::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kData = 3,
  kModel = 4,
  kInternal = 5,
};

/// Runs one command line. args[0] is the program name. Human-readable text
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bnlf::cli
