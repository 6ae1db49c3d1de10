#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qcx::cli {

// Exit codes: 0 success, 1 a check found a violation or a certificate of
// absence, 2 bad input (usage on the error stream).
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitBadInput = 2;

// Runs one command line (without the program name). Results go to `out`,
// diagnostics to `err`, filtered by the QCX_LOG environment variable.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qcx::cli
