#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tubal {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  IndexOutOfRange,
  ImaginaryResidualTooLarge,
  SingularFrequencySlice,
  NotOrthonormal,
  RankOutOfRange,
  RankDeficientSystem,
  EmptySampleSet,
  InsufficientSamples,
  NonPositiveRse,
  TooShort,
  ZeroTruth,
  BadMagic,
  TruncatedFile,
  DimOverflow,
  IoError,
  TimeoutExceeded,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `detail()` carries an index when the
/// error refers to one (the offending frequency slice for
/// SingularFrequencySlice, for example).
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message, std::optional<std::ptrdiff_t> detail = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::ptrdiff_t> detail() const noexcept { return detail_; }

private:
  ErrorCode code_;
  std::optional<std::ptrdiff_t> detail_;
};

/// True for the codes produced by file parsing and I/O.
bool is_io_error(ErrorCode code) noexcept;

} // namespace tubal
