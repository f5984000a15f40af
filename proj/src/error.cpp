#include "adic/error.hpp"

namespace adic {

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::MismatchedField: return "MismatchedField";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DivisionByIndistinguishableZero: return "DivisionByIndistinguishableZero";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::DerivativeIndistinguishableFromZero:
      return "DerivativeIndistinguishableFromZero";
    case ErrorKind::HypothesesFail: return "HypothesesFail";
    case ErrorKind::ContractionFails: return "ContractionFails";
    case ErrorKind::AllCoefficientsIndistinguishableFromZero:
      return "AllCoefficientsIndistinguishableFromZero";
    case ErrorKind::TailInconclusive: return "TailInconclusive";
    case ErrorKind::UndecidedMultipleRoot: return "UndecidedMultipleRoot";
    case ErrorKind::NotCertified: return "NOT_CERTIFIED";
  }
  return "Unknown";
}

}  // namespace adic
