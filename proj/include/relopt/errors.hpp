#pragma once

#include <stdexcept>
#include <string>

namespace relopt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// malformed input text or invalid arguments
struct ParseError : Error {
  using Error::Error;
};

// an operation refused to start or stopped because a configured budget
// (subset cap, candidate budget, class-size cap) would be exceeded
struct BudgetError : Error {
  using Error::Error;
};

}  // namespace relopt
