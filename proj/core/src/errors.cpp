#include "pansphere/errors.hpp"

namespace pansphere {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidUnitVector: return "InvalidUnitVector";
    case ErrorCode::InvalidMobius: return "InvalidMobius";
    case ErrorCode::InvalidZoom: return "InvalidZoom";
    case ErrorCode::InvalidErpShape: return "InvalidErpShape";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::WrongDepthUnits: return "WrongDepthUnits";
    case ErrorCode::DegenerateDepthRange: return "DegenerateDepthRange";
    case ErrorCode::DegenerateAlignment: return "DegenerateAlignment";
    case ErrorCode::EmptyOverlap: return "EmptyOverlap";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::AllPatchesDegenerate: return "AllPatchesDegenerate";
    case ErrorCode::NoRegionSplit: return "NoRegionSplit";
    case ErrorCode::InternalCoverageError: return "InternalCoverageError";
    case ErrorCode::IncompletePatchSet: return "IncompletePatchSet";
    case ErrorCode::PredictorFailure: return "PredictorFailure";
    case ErrorCode::Io: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

}  // namespace pansphere
