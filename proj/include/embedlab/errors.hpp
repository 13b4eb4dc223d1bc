#pragma once

#include <stdexcept>
#include <string>

namespace embedlab {

// Every error raised by the library derives from this, so callers that only
// care about "something went wrong" can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroInverse : public Error {
 public:
  ZeroInverse() : Error("inverse of zero") {}
};

class NotAField : public Error {
 public:
  explicit NotAField(const std::string& ring)
      : Error("ring " + ring + " is not a field") {}
};

class InfiniteCarrier : public Error {
 public:
  explicit InfiniteCarrier(const std::string& what)
      : Error("infinite carrier: " + what) {}
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class OrderViolation : public Error {
 public:
  using Error::Error;
};

class SearchSpaceTooLarge : public Error {
 public:
  using Error::Error;
};

class NotSummable : public Error {
 public:
  using Error::Error;
};

class DomainMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace embedlab
