#pragma once

#include <stdexcept>
#include <string>

namespace multdens {

// Each class maps to one CLI exit status (see cli.hpp).

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Raised when F^I_x is empty and a density ratio would be 0/0.
class UndefinedDensity : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace multdens
