#pragma once

#include <ostream>
#include <string_view>
#include <vector>

#include "sfch/solver.hpp"

namespace sfch::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kOk = 0,
  kUsageOrIoError = 1,
  kBlowUp = 2,
};

/// Parses "eps:iters,eps:iters,...". Throws InvalidArgument on malformed input.
std::vector<Stage> parse_stages(std::string_view text);

/// Entry point shared by the executable and the tests. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sfch::cli
