#pragma once

#include <ostream>

namespace certilin::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;        // Reject, parse error, I/O or internal error
inline constexpr int kBadChallenge = 2;  // the Verifier drew an unlucky challenge
inline constexpr int kUsage = 64;        // bad flags or a field below the protocol threshold
inline constexpr int kMismatch = 65;     // transcript does not belong to the matrix

// Runs one command line in-process; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace certilin::cli
