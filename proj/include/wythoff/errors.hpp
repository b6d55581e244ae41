#pragma once

#include <stdexcept>
#include <string>

namespace wythoff {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: empty lists, unparsable positions, bad specs.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Dimension mismatch, or a dimension the requested operation is undefined for.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class IllegalMove : public Error {
 public:
  using Error::Error;
};

// A computation would exceed the configured cell budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace wythoff
