#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tubal/report.hpp"
#include "tubal/sampling.hpp"
#include "tubal/tls.hpp"

namespace tubal {

struct SolverConfig {
  enum class Variant { Full, Simplified };

  Index rank = 1;
  Index iterations = 10;
  double epsilon = 1e-4; // SmoothQR starting noise scale
  double mu0 = 4.0;      // coherence budget
  Variant variant = Variant::Simplified;
  LsOptions ls;
  RngSeed seed{0, "altmin"};
  /// Number of splits inside MedianLS; 0 means round(3 log2 n) with n the
  /// dimension being solved for.
  Index median_subsets = 0;
  /// Simplified variant: start from the spectral initialization instead of
  /// a random orthonormal tensor.
  bool spectral_init = false;
  /// Stop once the RSE falls to this value.
  std::optional<double> rse_threshold;
  /// Stop when the observed-entry RSE improves by less than stall_tolerance
  /// over stall_window iterations; 0 disables.
  Index stall_window = 0;
  double stall_tolerance = 1e-12;
  /// Stop (and flag timed_out) after this many seconds; 0 disables.
  double time_limit = 0.0;
};

struct QrFactors {
  DenseTensor3 q; // n x r x k, orthonormal
  DenseTensor3 r; // r x r x k
};

/// Tensor QR from per-frequency thin QR with non-negative diagonal in R.
QrFactors qr_tensor(const DenseTensor3& y);

/// ||(I - U * U^T) * X|| (spectral norm): the sine of the largest principal
/// angle between the column spaces of orthonormal U and X.
double subspace_distance(const DenseTensor3& u, const DenseTensor3& x);

/// Spectral initialization: leading r eigenslices of P_omega(T) / p_hat,
/// mixed by a random orthonormal r x r x k tensor, tubes capped at
/// sqrt(8 mu0 ln m / m), then orthonormalized.
DenseTensor3 initialize(const DenseTensor3& observed, const SampleSet& omega, Index r, double mu0, const RngSeed& seed);

struct SmoothQrResult {
  DenseTensor3 z;
  double sigma_used = 0.0; // 0 when no perturbation was needed
};

/// QR of y, re-drawn with growing Gaussian perturbation (standard deviation
/// sigma / sqrt(n), sigma doubling from eps ||y|| / n) while the coherence
/// exceeds mu and sigma <= ||y||.
SmoothQrResult smooth_qr(const DenseTensor3& y, double eps, double mu, const RngSeed& seed);

/// Alternating minimization. The estimate is X * Y^T. RSE is measured against
/// `ground_truth` when given, otherwise on the observed entries.
SolveReport tubal_alt_min(const DenseTensor3& observed, const SampleSet& omega, const SolverConfig& cfg,
                          const std::optional<DenseTensor3>& ground_truth = std::nullopt);

/// Perturbation added at step l (1-based) of the subspace iteration.
using NoiseSource = std::function<DenseTensor3(Index step, Dims dims)>;

/// X_l = GS(T * X_{l-1} + G_l) for a square tensor T. Returns the distance
/// between X_l and the leading eigenslices of T for l = 0..steps.
std::vector<double> noisy_subspace_iteration(const DenseTensor3& t, const DenseTensor3& x0, Index steps,
                                             const NoiseSource& noise = {});

} // namespace tubal
