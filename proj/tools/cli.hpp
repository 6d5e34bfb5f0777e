#pragma once

#include <ostream>

namespace tms::cli {

// Runs one subcommand. Exit status: 0 success, 1 operation error or negative
// verdict, 2 malformed input. Diagnostics go to `err`, results to --out or `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tms::cli
