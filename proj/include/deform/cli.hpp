#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace deform {

// Dispatches one command line (without the program name) and prints a
// deterministic JSON report. Exit codes: 0 for affirmative verdicts, 1 for
// mathematical negatives (with a full report), 2 for malformed input.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace deform
