#pragma once

#include <stdexcept>
#include <string>

namespace rado {

/// Base class for every error raised by the library. The CLI maps all of
/// these to exit status 2 except where a subclass says otherwise.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside the range an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

class SetTooLarge : public Error {
 public:
  using Error::Error;
};

/// An enumeration or search hit its configured work cap.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A fractional-power instance mentions an integer that is not a perfect
/// ell-th power. Such tuples are refused rather than classified.
class FractionalPowerNotAPower : public Error {
 public:
  using Error::Error;
};

class EdgeOutsideDomain : public Error {
 public:
  using Error::Error;
};

}  // namespace rado
