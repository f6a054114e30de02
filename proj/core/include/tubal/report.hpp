#pragma once

#include <limits>
#include <span>
#include <vector>

#include "tubal/tensor.hpp"

namespace tubal {

/// Per-iteration trace of an iterative completion solver.
struct SolveReport {
  std::vector<double> rse;     // after each completed iteration
  std::vector<double> seconds; // cumulative wall clock, solver only
  double slope = std::numeric_limits<double>::quiet_NaN();
  double intercept = std::numeric_limits<double>::quiet_NaN();
  /// Set when no ground truth was supplied and `rse` is measured on the
  /// observed entries only.
  bool rse_on_observed = false;
  bool reached_threshold = false;
  bool timed_out = false;
  /// ||X^T * X - I||_F after each orthonormalization (full variant only).
  std::vector<double> orthonormality;
  /// Augmented Lagrangian after each iteration (ADMM only).
  std::vector<double> objective;
  DenseTensor3 estimate;
  DenseTensor3 x;
  DenseTensor3 y;

  Index iterations() const noexcept { return static_cast<Index>(rse.size()); }
  double final_rse() const { return rse.empty() ? std::numeric_limits<double>::quiet_NaN() : rse.back(); }
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Least-squares line through (i, log10 trace[i]), i = 0, 1, ...
/// Throws TooShort for fewer than two points and NonPositiveRse for a
/// non-positive entry.
LineFit fit_convergence(std::span<const double> trace);

/// Fills report.slope/intercept when the trace admits a fit, NaN otherwise.
void attach_fit(SolveReport& report);

/// ||estimate - truth||_F / ||truth||_F. Throws ZeroTruth.
double rse(const DenseTensor3& estimate, const DenseTensor3& truth);

} // namespace tubal
