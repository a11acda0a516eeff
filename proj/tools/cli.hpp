#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace framelab::cli {

// Runs one command line; returns the process exit code
// (0 success/pass, 1 verification failure, 2 input error).
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const char* env_tol = nullptr);

}  // namespace framelab::cli
