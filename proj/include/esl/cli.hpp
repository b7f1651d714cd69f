// The esl command line. Exit codes: 0 success or certified, 1 refuted (a
// witness is printed), 2 input or usage error, 3 budget exceeded.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace esl::cli {

/// args excludes the program name. "-" or a missing file argument reads `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace esl::cli
