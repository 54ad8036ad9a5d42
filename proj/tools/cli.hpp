#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tlms::cli {

enum Exit : int { Affirmative = 0, Negative = 1, InputError = 2 };

/// Runs one command line (without the program name) and returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tlms::cli
