#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lrlssvm::cli {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kInvalidFlags = 2,
    kDataError = 3,
    kNumericalError = 4,
};

/// Runs one command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lrlssvm::cli
