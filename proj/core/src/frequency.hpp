#pragma once

// Helpers shared by the frequency-domain kernels. Not installed.

#include <Eigen/Dense>

#include "tubal/tensor.hpp"

namespace tubal::detail {

using MatrixXc = Eigen::MatrixXcd;

/// Number of frequency slices that determine a real-origin spectrum: slices
/// 0..k/2; the remainder are complex conjugates of slices k - kappa.
inline Index independent_slices(Index k) noexcept { return k / 2 + 1; }

/// DC slice and (for even k) the Nyquist slice are real for real tensors.
inline bool self_conjugate(Index kappa, Index k) noexcept { return kappa == 0 || 2 * kappa == k; }

/// Fills slices kappa > k/2 with the conjugate of slice k - kappa.
void mirror_conjugate(FreqTensor3& f);

/// Writes `value` into frequency slice `kappa` of `f`.
void set_slice(FreqTensor3& f, Index kappa, const MatrixXc& value);

struct SliceSvd {
  MatrixXc u;
  Eigen::VectorXd s;
  MatrixXc v;
};

/// SVD of one frequency slice with deterministic phases: the largest-magnitude
/// entry of every left singular vector is made real and positive (ties go to
/// the lower index). Self-conjugate slices are decomposed in real arithmetic so
/// that the factors stay real. `full` requests square U and V.
SliceSvd slice_svd(const MatrixXc& a, bool real_slice, bool full);

/// Singular values only.
Eigen::VectorXd slice_singular_values(const MatrixXc& a, bool real_slice);

struct SliceQr {
  MatrixXc q; // rows x cols, orthonormal columns
  MatrixXc r; // cols x cols, upper triangular, real non-negative diagonal
};

/// Thin Householder QR of a tall slice with R's diagonal made real
/// non-negative.
SliceQr slice_qr(const MatrixXc& a, bool real_slice);

} // namespace tubal::detail
