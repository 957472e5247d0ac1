#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinpa {

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 when a verification fails and 2 for usage or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinpa
