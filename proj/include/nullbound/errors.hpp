#pragma once

#include <stdexcept>
#include <string>

namespace nullbound {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value or search left the concrete/enumeration budget it was given.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// The operation is not closed over the requested family/argument.
class Unsupported : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

// No unit-step filler sequence was found within the search budget.
class InterpolationFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace nullbound
