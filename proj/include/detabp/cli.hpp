#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace detabp::cli {

// Runs one command line (without the program name) against the given streams
// and returns the process exit code. In-process entry point so tests can
// assert byte-exact output without spawning.
//
// Exit codes: 0 success, 1 verification found a difference, 2 bad arguments
// or unreadable/malformed input, 3 input violates a conversion precondition
// (non-homogeneous determinant, wrong regularity, degree/size mismatch).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace detabp::cli
