#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flatlat {

enum class ErrorCode {
  CycleDetected,
  NoLeastElement,
  JoinMissing,
  DuplicateLabel,
  UnknownLabel,
  UnknownBuiltin,
  InvalidTable,
  SizeGuardExceeded,
  NotAHom,
  NotBijective,
  InternalDisagreement,
  IsDistributive,
  ParseError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the SLF reader; carries the 1-based source line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message,
             ErrorCode cause = ErrorCode::ParseError)
      : Error(cause, "line " + std::to_string(line) + ": " + message),
        line_(line),
        cause_(cause) {}

  std::size_t line() const noexcept { return line_; }
  ErrorCode cause() const noexcept { return cause_; }

 private:
  std::size_t line_;
  ErrorCode cause_;
};

}  // namespace flatlat
