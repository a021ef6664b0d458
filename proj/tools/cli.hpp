#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lpsphere::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kInvalidConfig = 2, kAccuracy = 3 };

/// Runs the command line `args` (without the program name), writing reports
/// to `out` and diagnostics to `err`.  Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 15 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string format_real(double x);

}  // namespace lpsphere::cli
