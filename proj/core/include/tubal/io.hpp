#pragma once

#include <filesystem>

#include "tubal/sampling.hpp"
#include "tubal/tensor.hpp"

namespace tubal {

/// T3B: "T3B1", three little-endian uint32 dims m n k, then m*n*k
/// little-endian float64 values in storage order.
///
/// Throws BadMagic, TruncatedFile (short or over-long payload), DimOverflow
/// (a zero dimension or a size that does not fit in memory) and IoError.
DenseTensor3 read_tensor(const std::filesystem::path& path);
void write_tensor(const std::filesystem::path& path, const DenseTensor3& t);

/// Text form of an observation set: "m n k" on the first line, then one
/// 1-based "i j kappa" triple per line.
SampleSet read_sample_set(const std::filesystem::path& path);
void write_sample_set(const std::filesystem::path& path, const SampleSet& omega);

} // namespace tubal
