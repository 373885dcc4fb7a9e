#pragma once

#include <stdexcept>
#include <string>

namespace entcap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad JSON, unknown fields, invariant violations.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Cut enumeration refused because too many free vertices.
class TooLarge : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class CyclicNetwork : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A dimension or table size left the 64-bit range.
class Overflow : public Error {
 public:
  using Error::Error;
};

}  // namespace entcap
