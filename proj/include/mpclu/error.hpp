#pragma once

#include <stdexcept>
#include <string>

namespace mpclu {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by an exact zero, or an exactly singular pivot column.
class SingularError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Invalid kernel, factorization or benchmark parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The inner dimension is too large for exact binary64 split products.
class SplitBudgetError : public Error {
 public:
  SplitBudgetError() : Error("dimension exceeds split exactness budget") {}
};

}  // namespace mpclu
