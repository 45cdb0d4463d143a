#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pansphere {

enum class ErrorCode {
  InvalidArgument,
  InvalidUnitVector,
  InvalidMobius,
  InvalidZoom,
  InvalidErpShape,
  ShapeMismatch,
  WrongDepthUnits,
  DegenerateDepthRange,
  DegenerateAlignment,
  EmptyOverlap,
  TooSmall,
  AllPatchesDegenerate,
  NoRegionSplit,
  InternalCoverageError,
  IncompletePatchSet,
  PredictorFailure,
  Io,
};

/// Stable name used in CLI error JSON and by the bindings.
std::string_view error_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries an ErrorCode. Io errors are
/// environment problems (missing files, unreadable formats); everything else
/// is a domain error.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  bool is_io() const noexcept { return code_ == ErrorCode::Io; }

 private:
  ErrorCode code_;
};

}  // namespace pansphere
