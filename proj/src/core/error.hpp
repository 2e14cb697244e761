#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mannheim {

enum class ErrorKind {
  InvalidArgument,
  Parse,
  Domain,          // evaluation outside an expression's real domain, or out-of-range s
  NullVector,      // a vector that must be non-null is lightlike (or zero)
  Degenerate,      // cylindrical ruling, singular point, unclassifiable frame
  PairingMismatch,
  NoRealSolution,
  DivisionByZero,
  Convergence,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Syntax error in an expression, curve literal or surface file.
/// `offset` is a byte offset into the parsed text; `line`/`column` are 1-based
/// and only set by the surface-file reader.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset, std::vector<std::string> expected = {},
             int line = 0, int column = 0);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t offset_;
  std::vector<std::string> expected_;
  int line_;
  int column_;
};

}  // namespace mannheim
