#include "error.hpp"

#include <sstream>

namespace mannheim {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::NullVector: return "null vector";
    case ErrorKind::Degenerate: return "degenerate geometry";
    case ErrorKind::PairingMismatch: return "pairing/type mismatch";
    case ErrorKind::NoRealSolution: return "no real solution";
    case ErrorKind::DivisionByZero: return "division by zero";
    case ErrorKind::Convergence: return "non-convergence";
    case ErrorKind::Io: return "i/o error";
  }
  return "unknown error";
}

namespace {

std::string format_parse_error(const std::string& message, std::size_t offset,
                               const std::vector<std::string>& expected, int line, int column) {
  std::ostringstream os;
  if (line > 0)
    os << "line " << line << ", column " << column << ": ";
  else
    os << "offset " << offset << ": ";
  os << message;
  if (!expected.empty()) {
    os << " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) os << (i + 1 == expected.size() ? " or " : ", ");
      os << expected[i];
    }
    os << ")";
  }
  return os.str();
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t offset, std::vector<std::string> expected,
                       int line, int column)
    : Error(ErrorKind::Parse, format_parse_error(message, offset, expected, line, column)),
      message_(message),
      offset_(offset),
      expected_(std::move(expected)),
      line_(line),
      column_(column) {}

}  // namespace mannheim
