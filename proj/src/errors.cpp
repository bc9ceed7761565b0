#include "kerrspec/errors.hpp"

namespace kerrspec {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NonPositiveMass: return "NonPositiveMass";
    case ErrorCode::HorizonAbsent: return "HorizonAbsent";
    case ErrorCode::ChargeTooLarge: return "ChargeTooLarge";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::TailModelRejected: return "TailModelRejected";
    case ErrorCode::NonPositiveEigenvalue: return "NonPositiveEigenvalue";
    case ErrorCode::InvalidTraces: return "InvalidTraces";
    case ErrorCode::ZeroTrace: return "ZeroTrace";
  }
  return "Unknown";
}

}  // namespace kerrspec
