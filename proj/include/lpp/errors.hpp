#pragma once

#include <stdexcept>
#include <string>

namespace lpp {

// Bad argument or violated precondition.
struct InvalidParameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A budget (horizon, population, column count) ran out.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Linear algebra or series evaluation did not meet its tolerance.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A self-check that should never fire.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace lpp
