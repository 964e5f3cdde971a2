#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qnet::cli {

enum ExitCode : int {
    kOk = 0,
    kPropertyViolated = 1,
    kInputError = 2,
};

/// Runs one command line (argv[0] included) and returns the process exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qnet::cli
