#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hafnian::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kNotConverged = 3,
  kHypothesisFailed = 4,
};

/// Runs one command line (args[0] is the program name). Reports go to `out`
/// as JSON, diagnostics and usage to `err`; the return value is the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The published JSON schema for every report.
const char* report_schema();

}  // namespace hafnian::cli
