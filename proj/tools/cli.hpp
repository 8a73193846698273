#pragma once

#include <iosfwd>

namespace lamp::cli {

enum ExitCode : int { Ok = 0, TypeFailure = 1, ParseFailure = 2, InvariantFailure = 3, BudgetFailure = 4 };

// Entry point shared by the executable and the tests. argv[0] is ignored.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lamp::cli
