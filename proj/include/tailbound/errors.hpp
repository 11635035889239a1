#pragma once

#include <stdexcept>

namespace tailbound {

// Rejected parameters or malformed configuration. The CLI maps this to exit 2.
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numeric routine could not produce a trustworthy finite result.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Statistical estimation refused: preconditions on the data not met.
class estimation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tailbound
