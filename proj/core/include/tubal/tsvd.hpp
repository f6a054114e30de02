#pragma once

#include "tubal/tensor.hpp"

namespace tubal {

/// T = U * Theta * V^T. Full factors are m x m x k, m x n x k and n x n x k;
/// reduced factors keep the leading r eigenslices (m x r x k, r x r x k,
/// n x r x k).
struct TsvdFactors {
  DenseTensor3 u;
  DenseTensor3 theta;
  DenseTensor3 v;
  bool reduced = false;
};

/// Full t-SVD. Singular values are sorted per frequency slice; each left
/// singular vector has its largest-magnitude entry made real positive.
TsvdFactors tsvd(const DenseTensor3& t);

/// Reduced t-SVD keeping r eigenslices. Throws RankOutOfRange unless
/// 1 <= r <= min(m, n).
TsvdFactors tsvd(const DenseTensor3& t, Index r);

/// Euclidean norms of the eigentubes Theta(s, s, :), s = 0..min(m, n)-1.
Eigen::VectorXd eigentube_norms(const DenseTensor3& t);

/// Number of eigentubes whose norm exceeds tol times the largest one.
Index tubal_rank(const DenseTensor3& t, double tol = 1e-8);

/// Best tubal-rank-r approximation.
DenseTensor3 truncate_rank(const DenseTensor3& t, Index r);

/// Leading r left eigenslices, an orthonormal m x r x k tensor.
DenseTensor3 top_r_eigenslices(const DenseTensor3& t, Index r);

} // namespace tubal
