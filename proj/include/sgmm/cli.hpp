#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sgmm {

/// Runs one CLI invocation; args excludes the program name. Returns 0 on
/// success, 1 on a domain error and 2 on a usage error.
int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                std::ostream& err);

}  // namespace sgmm
