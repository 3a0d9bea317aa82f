#ifndef EFFHAM_CLI_HPP
#define EFFHAM_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace effham::cli {

/// Runs one CLI invocation (argv without the program name).
/// Exit codes: 0 success, 1 validation failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace effham::cli

#endif  // EFFHAM_CLI_HPP
