#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wafm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operand lies outside the carrier of the semiring applied to it,
/// or an arithmetic combination has no defined value (inf + -inf).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two multisets (or a multiset and a configuration) are over different feature sets.
class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0)
      : Error(format(message, line, column)), message_(message), line_(line), column_(column) {}

  /// The message without the position prefix.
  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    if (line == 0) return message;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  }

  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace wafm
