#ifndef KAOS2B_CLI_HPP
#define KAOS2B_CLI_HPP

#include <string>
#include <vector>

namespace kaos2b {

/// Runs the command-line driver. Exit codes: 0 success, 1 validation or
/// syntax errors, 2 I/O errors, 3 unsupported edits / no matching
/// back-propagation rule.
int run_cli(const std::vector<std::string>& args);

}  // namespace kaos2b

#endif
