#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rlan {

enum class ErrorCode {
  kInvalidArgument,
  kOracleUnavailable,
  kNonFiniteLikelihood,
  kQuadratureFailure,
  kAllWeightsZero,
  kDegenerateData,
  kGridOutOfBounds,
  kSingularDesign,
  kNoInteriorMax,
  kDegenerateFit,
  kNonpositiveInformation,
  kUnknownKey,
  kTypeMismatch,
  kMissingRequired,
  kIo,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library. `index()` carries the offending
// observation or line number when one is meaningful.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace rlan
