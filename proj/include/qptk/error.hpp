#pragma once

#include <stdexcept>
#include <string>

namespace qptk {

/// Base of every exception thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition (length or grid mismatch, bad grid).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of the operation (p < 1, b == 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The sampling grid cannot resolve the requested chirp or spectrum.
class SamplingError : public Error {
 public:
  using Error::Error;
};

/// A finite grid truncates a signal, wavelet, or moment integrand too early.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. Carries the 1-based line number when known (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Bad command name, check name, or option value.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace qptk
