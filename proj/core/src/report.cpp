#include "tubal/report.hpp"

#include <algorithm>
#include <cmath>

#include "tubal/algebra.hpp"

namespace tubal {

LineFit fit_convergence(std::span<const double> trace)
{
  if (trace.size() < 2) {
    throw Error(ErrorCode::TooShort, "a convergence fit needs at least two points");
  }
  double const count = static_cast<double>(trace.size());
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!(trace[i] > 0.0)) {
      throw Error(ErrorCode::NonPositiveRse, "RSE at iteration " + std::to_string(i) + " is not positive",
                  static_cast<Index>(i));
    }
    sx += static_cast<double>(i);
    sy += std::log10(trace[i]);
  }
  double const mx = sx / count;
  double const my = sy / count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    double const dx = static_cast<double>(i) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log10(trace[i]) - my);
  }
  double const slope = sxy / sxx;
  return LineFit{slope, my - slope * mx};
}

void attach_fit(SolveReport& report)
{
  bool const usable = report.rse.size() >= 2
                      && std::all_of(report.rse.begin(), report.rse.end(), [](double v) { return v > 0.0 && std::isfinite(v); });
  if (!usable) {
    return;
  }
  LineFit const fit = fit_convergence(report.rse);
  report.slope = fit.slope;
  report.intercept = fit.intercept;
}

double rse(const DenseTensor3& estimate, const DenseTensor3& truth)
{
  if (!(estimate.dims() == truth.dims())) {
    throw Error(ErrorCode::DimensionMismatch, "rse of " + to_string(estimate.dims()) + " against " + to_string(truth.dims()));
  }
  double const norm = frobenius_norm(truth);
  if (!(norm > 0.0)) {
    throw Error(ErrorCode::ZeroTruth, "rse against a zero tensor");
  }
  return frobenius_norm(estimate - truth) / norm;
}

} // namespace tubal
