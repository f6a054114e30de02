#pragma once

#include <optional>
#include <vector>

#include "tubal/report.hpp"
#include "tubal/sampling.hpp"

namespace tubal {

/// TNN-ADMM for min_X 1/2 ||P_omega(T - X)||_F^2 + (lambda / k) TNN(X),
/// split as X = Z with an unscaled dual Q.
struct AdmmConfig {
  double lambda = 0.0; // <= 0 selects default_lambda
  double alpha = 1.0;
  Index max_iters = 500;
  /// Stop when the augmented Lagrangian changes by less than this, relative
  /// to max(1, |value|); 0 runs all iterations.
  double tolerance = 0.0;
  std::optional<double> rse_threshold;
  double time_limit = 0.0;
};

/// Sum of the nuclear norms of all frequency slices.
double tnn(const DenseTensor3& t);

/// Soft-thresholds the singular values of every frequency slice by eps.
DenseTensor3 svt(const DenseTensor3& t, double eps);

/// ||observed||_F / sqrt(max(m, n) k).
double default_lambda(const DenseTensor3& observed);

/// `count` log-spaced weights from lo to hi times ||observed||_F.
std::vector<double> lambda_grid(const DenseTensor3& observed, Index count = 5, double lo = 1e-3, double hi = 1.0);

/// Runs ADMM from X = Z = Q = 0; the reported estimate is X.
SolveReport admm_complete(const DenseTensor3& observed, const SampleSet& omega, const AdmmConfig& cfg,
                          const std::optional<DenseTensor3>& ground_truth = std::nullopt);

} // namespace tubal
