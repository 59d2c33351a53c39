#pragma once

#include <stdexcept>
#include <string>

namespace icis {

enum class ErrorCode {
  Syntax,
  UnknownVariable,
  RingMismatch,
  Semantic,
  NotIsolated,
  NotIcis,
  Resource,
  Genericity,
  Precondition,
  NoStabilization,
  Infinite,
  InvalidPath,
  NonReducedFiber,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "SYNTAX";
    case ErrorCode::UnknownVariable: return "UNKNOWN_VARIABLE";
    case ErrorCode::RingMismatch: return "RING_MISMATCH";
    case ErrorCode::Semantic: return "SEMANTIC";
    case ErrorCode::NotIsolated: return "NOT_ISOLATED";
    case ErrorCode::NotIcis: return "NOT_ICIS";
    case ErrorCode::Resource: return "RESOURCE_LIMIT";
    case ErrorCode::Genericity: return "GENERICITY_FAILURE";
    case ErrorCode::Precondition: return "PRECONDITION";
    case ErrorCode::NoStabilization: return "NO_STABILIZATION";
    case ErrorCode::Infinite: return "INFINITE";
    case ErrorCode::InvalidPath: return "INVALID_PATH";
    case ErrorCode::NonReducedFiber: return "NON_REDUCED_FIBER";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse errors carry a byte offset into the parsed text (and a line when known).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset, std::size_t line = 0,
             ErrorCode code = ErrorCode::Syntax)
      : Error(code, what + " at " + (line ? "line " + std::to_string(line) + ", " : "") +
                                     "offset " + std::to_string(offset)),
        offset_(offset),
        line_(line) {}

  std::size_t offset() const noexcept { return offset_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t offset_;
  std::size_t line_;
};

}  // namespace icis
