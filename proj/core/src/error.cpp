#include "tubal/error.hpp"

namespace tubal {

std::string_view to_string(ErrorCode code)
{
  switch (code) {
  case ErrorCode::InvalidArgument: return "InvalidArgument";
  case ErrorCode::DimensionMismatch: return "DimensionMismatch";
  case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
  case ErrorCode::ImaginaryResidualTooLarge: return "ImaginaryResidualTooLarge";
  case ErrorCode::SingularFrequencySlice: return "SingularFrequencySlice";
  case ErrorCode::NotOrthonormal: return "NotOrthonormal";
  case ErrorCode::RankOutOfRange: return "RankOutOfRange";
  case ErrorCode::RankDeficientSystem: return "RankDeficientSystem";
  case ErrorCode::EmptySampleSet: return "EmptySampleSet";
  case ErrorCode::InsufficientSamples: return "InsufficientSamples";
  case ErrorCode::NonPositiveRse: return "NonPositiveRse";
  case ErrorCode::TooShort: return "TooShort";
  case ErrorCode::ZeroTruth: return "ZeroTruth";
  case ErrorCode::BadMagic: return "BadMagic";
  case ErrorCode::TruncatedFile: return "TruncatedFile";
  case ErrorCode::DimOverflow: return "DimOverflow";
  case ErrorCode::IoError: return "IoError";
  case ErrorCode::TimeoutExceeded: return "TimeoutExceeded";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<std::ptrdiff_t> detail)
  : std::runtime_error(std::string(to_string(code)) + ": " + message)
  , code_{code}
  , detail_{detail}
{
}

bool is_io_error(ErrorCode code) noexcept
{
  return code == ErrorCode::BadMagic || code == ErrorCode::TruncatedFile || code == ErrorCode::DimOverflow ||
         code == ErrorCode::IoError;
}

} // namespace tubal
