#pragma once

#include <ostream>

namespace gensamp::cli {

/// Entry point shared by the executable and the tests.
/// Exit codes: 0 success, 2 usage, 3 numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gensamp::cli
