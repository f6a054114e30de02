#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tubal/tensor.hpp"

namespace tubal {

/// Seed plus stream label. Every random draw in the library is taken from an
/// engine built by `engine()`, so the pair fully determines the draws.
struct RngSeed {
  std::uint64_t seed = 0;
  std::string label;

  std::mt19937_64 engine() const;
  /// Independent sub-stream, e.g. one per repetition or per subset.
  RngSeed derive(std::string_view sub) const;
  RngSeed derive(std::uint64_t sub) const;
};

using Triple = std::array<Index, 3>;

/// Observation set: distinct (i, j, kappa) triples inside `dims`, stored as
/// sorted linear indices of the tensor layout.
class SampleSet {
public:
  SampleSet() = default;
  /// Throws IndexOutOfRange for an index outside the tensor and
  /// InvalidArgument for duplicates.
  SampleSet(Dims dims, std::vector<Index> linear);

  static SampleSet full(Dims dims);
  static SampleSet from_triples(Dims dims, std::span<const Triple> triples);

  const Dims& dims() const noexcept { return dims_; }
  Index size() const noexcept { return static_cast<Index>(linear_.size()); }
  bool empty() const noexcept { return linear_.empty(); }
  std::span<const Index> linear() const noexcept { return linear_; }

  bool contains(Index i, Index j, Index kappa) const;
  std::vector<Triple> triples() const;
  /// 0/1 tensor with ones on the observed entries.
  DenseTensor3 mask() const;

  /// (i, j, kappa) -> (j, i, kappa).
  SampleSet tube_transposed() const;
  /// (i, j, kappa) -> (j, i, -kappa mod k), the pattern of ttranspose.
  SampleSet ttransposed() const;

  friend bool operator==(const SampleSet&, const SampleSet&) = default;

private:
  Dims dims_{};
  std::vector<Index> linear_;
};

/// Every entry kept independently with probability p.
SampleSet sample_bernoulli(Dims dims, double p, const RngSeed& seed);

/// Zeroes every entry outside omega.
DenseTensor3 project(const DenseTensor3& t, const SampleSet& omega);

/// Assigns every element of omega to one of `parts` disjoint subsets chosen
/// uniformly at random.
std::vector<SampleSet> split(const SampleSet& omega, Index parts, const RngSeed& seed);

struct SyntheticInstance {
  DenseTensor3 tensor; // x * y
  DenseTensor3 x;      // m x r x k, iid N(0, 1)
  DenseTensor3 y;      // r x n x k, iid N(0, 1)
};

/// Gaussian factors of tubal-rank r and their t-product.
SyntheticInstance synth_low_tubal_rank(Dims dims, Index r, const RngSeed& seed);

/// Tensor with iid N(0, 1) entries.
DenseTensor3 gaussian_tensor(Dims dims, std::mt19937_64& engine);

} // namespace tubal
