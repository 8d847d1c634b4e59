#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pg4::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kBadInput = 2 };

// args excludes the program name. Data goes to `out` (or --out), progress
// and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace pg4::cli
