#pragma once

#include <iosfwd>

namespace lamnet::cli {

enum ExitCode : int {
  kOk = 0,
  kError = 1,
  kFuelExhausted = 2,
  kOracleMismatch = 3,
};

// Entry point shared by the executable and the tests. `in` backs the `-`
// input path.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace lamnet::cli
