#pragma once

#include <stdexcept>
#include <string>

namespace rotnum {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad genus, bad letter, unparsable word or expression.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Text that failed to parse; `position` is the byte offset of the problem.
class ParseError : public ArgumentError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : ArgumentError(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A word or evaluation exceeded its configured length budget.
class LengthError : public Error {
 public:
  using Error::Error;
};

/// A constructed object failed its eager invariant checks.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A quantity that must be an integer could not be certified as one, even
/// after precision escalation.
class CertificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace rotnum
