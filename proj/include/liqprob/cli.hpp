#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace liqprob::cli {

enum ExitCode : int { kSuccess = 0, kRuntimeError = 1, kUsageError = 2 };

/// Runs one invocation. `args` excludes the program name. Standard output
/// receives either the complete result or nothing; every failure writes a
/// single JSON line {"error": kind, "message": ...} to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace liqprob::cli
