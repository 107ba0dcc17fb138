#include "rlan/errors.hpp"

namespace rlan {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kOracleUnavailable: return "OracleUnavailable";
    case ErrorCode::kNonFiniteLikelihood: return "NonFiniteLikelihood";
    case ErrorCode::kQuadratureFailure: return "QuadratureFailure";
    case ErrorCode::kAllWeightsZero: return "AllWeightsZero";
    case ErrorCode::kDegenerateData: return "DegenerateData";
    case ErrorCode::kGridOutOfBounds: return "GridOutOfBounds";
    case ErrorCode::kSingularDesign: return "SingularDesign";
    case ErrorCode::kNoInteriorMax: return "NoInteriorMax";
    case ErrorCode::kDegenerateFit: return "DegenerateFit";
    case ErrorCode::kNonpositiveInformation: return "NonpositiveInformation";
    case ErrorCode::kUnknownKey: return "UnknownKey";
    case ErrorCode::kTypeMismatch: return "TypeMismatch";
    case ErrorCode::kMissingRequired: return "MissingRequired";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> index)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      index_(index) {}

}  // namespace rlan
