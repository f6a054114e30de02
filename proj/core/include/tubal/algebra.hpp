#pragma once

#include "tubal/tensor.hpp"

/// t-product algebra over real third-order tensors.
///
/// The mode-3 DFT is unnormalized in the forward direction; the inverse
/// divides by k. Under that convention the t-product of two tensors is the
/// slice-by-slice matrix product of their frequency representations, and all
/// spectral quantities (spectral norm, tensor nuclear norm, t-SVD) are read off
/// the frequency slices.
namespace tubal {

/// Relative imaginary residual above which an inverse DFT is rejected.
inline constexpr double kMaxImaginaryResidual = 1e-6;

FreqTensor3 fft_mode3(const DenseTensor3& t);

/// Inverse mode-3 DFT. Throws ImaginaryResidualTooLarge when the imaginary
/// part exceeds `max_imaginary` relative to the magnitude of the result,
/// i.e. when `f` is not the image of a real tensor.
DenseTensor3 ifft_mode3(const FreqTensor3& f, double max_imaginary = kMaxImaginaryResidual);

/// Inverse mode-3 DFT keeping the complex result.
FreqTensor3 ifft_mode3_complex(const FreqTensor3& f);

/// ||imag(ifft(f))||_F / ||ifft(f)||_F, zero for a zero tensor.
double imaginary_residual(const FreqTensor3& time_domain);

/// t-product A * B for A (n1 x n2 x k) and B (n2 x n3 x k).
DenseTensor3 tprod(const DenseTensor3& a, const DenseTensor3& b);

/// Tensor transpose: every frontal slice transposed, slices 2..k reversed.
DenseTensor3 ttranspose(const DenseTensor3& t);

/// Tube-wise transpose: result(i, j, :) = t(j, i, :), no slice reordering.
DenseTensor3 tube_transpose(const DenseTensor3& t);

/// Identity for the t-product: first frontal slice I_n, the rest zero.
DenseTensor3 identity_tensor(Index n, Index k);

/// t-product inverse of a square tensor, computed slice-wise in frequency.
/// Throws SingularFrequencySlice (detail = slice index) when a frequency slice
/// has condition number above 1e12.
DenseTensor3 tinv(const DenseTensor3& t);

/// Entry-wise product.
DenseTensor3 elementwise_prod(const DenseTensor3& a, const DenseTensor3& b);
/// Circular convolution of matching tubes.
DenseTensor3 tubewise_conv(const DenseTensor3& a, const DenseTensor3& b);
/// Matrix product of matching frontal slices (a: m x n x k, b: n x q x k).
DenseTensor3 slicewise_prod(const DenseTensor3& a, const DenseTensor3& b);

/// Block-circulant expansion: block (i, j) is the k x k circulant of the tube
/// t(i, j, :). Materializes an (mk) x (nk) matrix, so it is meant for
/// verification on small tensors only.
CircularMatrix circ_expand(const DenseTensor3& t);

double frobenius_norm(const DenseTensor3& t);
/// Largest singular value over all frequency slices.
double spectral_norm(const DenseTensor3& t);
/// Largest absolute entry.
double infinity_norm(const DenseTensor3& t);
/// Frobenius norm of every lateral slice t(:, j, :).
Eigen::VectorXd col_2star_norms(const DenseTensor3& t);
/// Largest lateral-slice norm.
double inf_2star_norm(const DenseTensor3& t);

/// ||U^T * U - I||_F for an n x r x k tensor.
double orthonormality_error(const DenseTensor3& u);
/// Tolerance used to accept a tensor as orthonormal: 1e-8 * sqrt(r k).
double orthonormality_tolerance(const DenseTensor3& u);

/// Tensor-column coherence (n / r) max_i ||U^T * e_i||_F^2 of an orthonormal
/// n x r x k tensor. Throws NotOrthonormal.
double coherence(const DenseTensor3& u);

/// m x 1 x k column basis with a single 1 at (i, 0, 0).
DenseTensor3 column_basis(Index i, Index m, Index k);
/// Length-k tube with a single 1 at position j.
TubeScalar tubal_basis(Index j, Index k);

} // namespace tubal
