#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fgc::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2, kPrecision = 3 };

/// Runs one fgc command (arguments without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fgc::cli
