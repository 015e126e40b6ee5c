#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sdc {

// Base of every error the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A precondition of an operation does not hold for its input.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// An enumeration (group closure, code list, codeword scan) outgrew its cap.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::size_t partial)
      : Error(what + " (cap exceeded after " + std::to_string(partial) + ")"), partial_(partial) {}

  std::size_t partial() const noexcept { return partial_; }

 private:
  std::size_t partial_;
};

}  // namespace sdc
