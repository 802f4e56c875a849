#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uvt {

// Base class for everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input or a violated precondition (non-dominant weight, division by
// zero, Borel violation, ...). The CLI maps this to exit code 1.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

class ParseError : public ConstraintError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : ConstraintError(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// An internal consistency check failed. The CLI maps this to exit code 2.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace uvt
