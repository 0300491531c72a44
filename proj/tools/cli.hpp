#pragma once

#include <iosfwd>

namespace regseq::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kNotComputed = 3,  // inaction, invalid access, or a non-total table
  kBudget = 4,
};

/// Entry point of the `regseq` tool with injectable streams.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace regseq::cli
