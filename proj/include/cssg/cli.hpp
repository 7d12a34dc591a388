#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cssg::cli {

// Parses and executes one command line (without the program name).  Returns
// the process exit code: 0 success, 1 a verification verdict failed, 2 an
// input or invariant error.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace cssg::cli
