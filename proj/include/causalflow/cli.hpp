#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace causalflow {

/// Runs the command line front end. `args` excludes the program name.
/// Returns 0 on success, 1 on input errors and 2 on numerical failures; errors are
/// written to `err` as one JSON object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace causalflow
