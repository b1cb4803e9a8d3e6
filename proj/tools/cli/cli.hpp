#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace klorentz::cli {

/// Runs one command line (without the program name). The JSON report goes to
/// `out`, diagnostics to `err`. Returns 0 Holds, 1 Fails, 2 Inconclusive, 3 on
/// usage or parse errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace klorentz::cli
