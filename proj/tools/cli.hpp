#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pfree::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kVerificationFailed = 2 };

// args excludes the program name. Reports go to `out` unless --out names a
// file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pfree::cli
