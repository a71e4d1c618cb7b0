#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tadic::cli {

enum ExitCode : int {
  kErgodic = 0,
  kNotErgodic = 1,
  kInconclusive = 2,
  kInputError = 3,
};

enum class OutputFormat { Text, Json, Csv };

struct RunConfig {
  unsigned precision = 64;  // upper bound on working precision
  unsigned level = 10;      // criterion level N
  unsigned depth = 12;      // oracle depth k or t
  OutputFormat format = OutputFormat::Text;
};

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tadic::cli
