#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace satqkd::cli {

enum ExitCode { kOk = 0, kConfigError = 2, kNumericError = 3 };

// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// RFC 4180 field quoting.
std::string csv_field(const std::string& s);

}  // namespace satqkd::cli
