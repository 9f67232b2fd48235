#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace subcrit::cli {

/// Runs the tool on argv-style arguments (args[0] is the program name).
/// Data goes to `out` unless --out or SUBCRIT_OUTPUT_DIR redirects it to a file;
/// messages go to `err`. Returns 0 on success, 2 on usage errors, 1 otherwise.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subcrit::cli
