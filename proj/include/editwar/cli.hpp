#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace editwar::cli {

// Process exit codes.
enum ExitCode : int {
    ok = 0,
    malformed_input = 1,
    bad_arguments = 2,
    page_not_found = 3,
    evaluation_error = 4,
};

/// Runs one command line (args[0] is the program name). `in` stands in for
/// stdin when an input path is "-"; `out` receives results not redirected
/// with --out, `err` diagnostics and summaries.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace editwar::cli
