#pragma once

#include <string>
#include <vector>

namespace logtangent {

/// Outcome of one command-line invocation: the process exit code and the
/// exact bytes destined for stdout and stderr.  Pure function of the
/// argument vector and any referenced input files, so identical invocations
/// produce byte-identical results.
struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

/**
 * @brief Runs the tool on the given argument tail (program name excluded).
 *
 * Exit codes: 0 success, 2 usage error (unknown flags, malformed inputs),
 * 3 precondition violation (inputs parsed but rejected by the operation),
 * 4 internal verification failure (an embedded or computed cross-check did
 * not hold).
 */
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace logtangent
