#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace freiman::cli {

/// Runs one command line (without the program name). Returns the exit code:
/// 0 on success, 2 when a constructed object fails its own verification,
/// 1 on usage and input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace freiman::cli
