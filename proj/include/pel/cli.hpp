#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pel {

// Whole command-line front end, factored out so tests can drive it. args
// excludes the program name. Returns the process exit code: 0 on success,
// 1 on domain errors, 2 on usage or syntax errors. Results go to out,
// diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err);

}  // namespace pel
