#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adic {

// Names are part of the CLI contract: scripts match on them verbatim.
enum class ErrorKind {
  InvalidArgument,
  ParseError,
  MismatchedField,
  DomainError,
  DivisionByIndistinguishableZero,
  PrecisionExhausted,
  InsufficientPrecision,
  DerivativeIndistinguishableFromZero,
  HypothesesFail,
  ContractionFails,
  AllCoefficientsIndistinguishableFromZero,
  TailInconclusive,
  UndecidedMultipleRoot,
  NotCertified,
};

std::string_view error_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

/// Parse failure with the byte offset into the input where it was detected.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error(ErrorKind::ParseError,
              "at position " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace adic
