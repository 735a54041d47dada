#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fgc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different coefficient rings.
class RingMismatch : public Error {
 public:
  using Error::Error;
};

/// A value-level precondition failed (non-unit, nonzero constant term, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Truncation order or t-window too small for the requested result.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// A series document does not follow the JSON schema.
class FormatError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace fgc
