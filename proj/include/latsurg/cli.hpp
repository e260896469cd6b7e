#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latsurg::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kUnsatisfiable = 3 };

inline constexpr const char *kSchema = "latsurg/1";

/// Runs one command line (without the program name). The report goes to
/// `out` unless --out is given, in which case it is written to a temporary
/// sibling file and renamed into place. Diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

int run(int argc, const char *const *argv);

}  // namespace latsurg::cli
