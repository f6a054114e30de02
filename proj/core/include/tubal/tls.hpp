#pragma once

#include <span>
#include <vector>

#include "tubal/sampling.hpp"
#include "tubal/tensor.hpp"

namespace tubal {

struct LsOptions {
  enum class Solver { NormalEquations, OrthogonalFactorization };
  enum class RankDeficiency { MinimumNorm, Error };

  double regularization = 0.0; // ridge weight, >= 0
  Solver solver = Solver::OrthogonalFactorization;
  RankDeficiency rank_deficiency = RankDeficiency::MinimumNorm;
};

/// Frequency-domain least-squares system for one lateral slice j of the
/// problem min_Z ||P(D - A * Z)||_F with A (p x r x k), D and P (p x q x k).
///
/// Rows are indexed by (i, kappa_out) at i * k + kappa_out, columns by
/// (s, kappa_in) at s * k + kappa_in. The entry is
/// (1/k) P~(i, j, kappa_out - kappa_in mod k) * A~(i, s, kappa_in), i.e. the
/// circulant of the transformed mask tube applied to the frequency-slice
/// product, without forming either factor.
struct SliceSystem {
  Index j = 0;
  Eigen::VectorXcd b;      // D~(i, j, kappa) stacked tube by tube
  Eigen::MatrixXcd design; // (p k) x (r k)
  std::vector<Index> rows; // the i of each block of k rows, in order
};

/// Assembles the full (p k) x (r k) system for slice j.
SliceSystem build_slice_system(const FreqTensor3& observed_freq, const FreqTensor3& mask_freq, const FreqTensor3& a_freq,
                               Index j);

/// Same system without the row blocks of tubes that hold no observation;
/// those rows are identically zero.
SliceSystem build_observed_slice_system(const FreqTensor3& observed_freq, const FreqTensor3& mask_freq,
                                        const FreqTensor3& a_freq, Index j);

/// Minimum-norm (or ridge) solution of a slice system, length r k.
Eigen::VectorXcd solve_slice_system(const SliceSystem& system, const LsOptions& opts);

/// Z (r x q x k) minimizing ||P_omega(observed - A * Z)||_F.
DenseTensor3 ls_solve_core(const DenseTensor3& observed, const SampleSet& omega, const DenseTensor3& a,
                           const LsOptions& opts = {});

/// Y (n x r x k) minimizing ||P_omega(T - X * Y^T)||_F for X (m x r x k).
DenseTensor3 ls_solve_y(const DenseTensor3& observed, const SampleSet& omega, const DenseTensor3& x,
                        const LsOptions& opts = {});

/// X (m x r x k) minimizing ||P_omega(T - X * Y^T)||_F for Y (n x r x k),
/// solved as the tube-wise transposed problem.
DenseTensor3 ls_solve_x(const DenseTensor3& observed, const SampleSet& omega, const DenseTensor3& y,
                        const LsOptions& opts = {});

/// Entry-wise median; an even count takes the mean of the two middle values.
DenseTensor3 elementwise_median(std::span<const DenseTensor3> tensors);

/// Round(3 log2 n), at least 1.
Index default_median_subsets(Index n);

/// Splits omega into `subsets` parts, solves ls_solve_y on each and returns
/// the entry-wise median.
DenseTensor3 median_ls_y(const DenseTensor3& observed, const SampleSet& omega, const DenseTensor3& x, Index subsets,
                         const RngSeed& seed, const LsOptions& opts = {});

/// As median_ls_y for the X update.
DenseTensor3 median_ls_x(const DenseTensor3& observed, const SampleSet& omega, const DenseTensor3& y, Index subsets,
                         const RngSeed& seed, const LsOptions& opts = {});

} // namespace tubal
