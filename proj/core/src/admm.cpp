#include "tubal/admm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "frequency.hpp"
#include "tubal/algebra.hpp"
#include "tubal/parallel.hpp"

namespace tubal {

double tnn(const DenseTensor3& t)
{
  FreqTensor3 const f = fft_mode3(t);
  Index const k = t.depth();
  double total = 0.0;
  for (Index kappa = 0; kappa < k; ++kappa) {
    Index const source = kappa < detail::independent_slices(k) ? kappa : k - kappa;
    total += detail::slice_singular_values(f.slice(source), detail::self_conjugate(source, k)).sum();
  }
  return total;
}

namespace {

// Soft-thresholded tensor together with its TNN, read off the shrunk
// singular values.
DenseTensor3 shrink(const DenseTensor3& t, double eps, double* nuclear)
{
  if (!(eps >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "threshold must be non-negative");
  }
  FreqTensor3 const f = fft_mode3(t);
  Index const k = t.depth();
  Index const half = detail::independent_slices(k);
  FreqTensor3 out(t.dims());
  std::vector<double> sums(static_cast<std::size_t>(half), 0.0);
  parallel_for(half, [&](Index kappa) {
    auto const svd = detail::slice_svd(f.slice(kappa), detail::self_conjugate(kappa, k), false);
    Eigen::VectorXd const s = (svd.s.array() - eps).max(0.0).matrix();
    out.slice(kappa).noalias() = svd.u * s.cast<Complex>().asDiagonal() * svd.v.adjoint();
    sums[static_cast<std::size_t>(kappa)] = s.sum();
  });
  if (nuclear) {
    double total = 0.0;
    for (Index kappa = 0; kappa < k; ++kappa) {
      total += sums[static_cast<std::size_t>(kappa < half ? kappa : k - kappa)];
    }
    *nuclear = total;
  }
  detail::mirror_conjugate(out);
  return ifft_mode3(out);
}

} // namespace

DenseTensor3 svt(const DenseTensor3& t, double eps) { return shrink(t, eps, nullptr); }

double default_lambda(const DenseTensor3& observed)
{
  double const scale = static_cast<double>(std::max(observed.rows(), observed.cols()) * observed.depth());
  return frobenius_norm(observed) / std::sqrt(scale);
}

std::vector<double> lambda_grid(const DenseTensor3& observed, Index count, double lo, double hi)
{
  if (count < 1 || !(lo > 0.0) || !(hi >= lo)) {
    throw Error(ErrorCode::InvalidArgument, "lambda grid needs count >= 1 and 0 < lo <= hi");
  }
  double const norm = frobenius_norm(observed);
  std::vector<double> out;
  for (Index i = 0; i < count; ++i) {
    double const frac = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    out.push_back(norm * lo * std::pow(hi / lo, frac));
  }
  return out;
}

SolveReport admm_complete(const DenseTensor3& observed, const SampleSet& omega, const AdmmConfig& cfg,
                          const std::optional<DenseTensor3>& ground_truth)
{
  if (!(observed.dims() == omega.dims()) || (ground_truth && !(ground_truth->dims() == observed.dims()))) {
    throw Error(ErrorCode::DimensionMismatch, "observed, mask and truth must share dimensions");
  }
  if (!(cfg.alpha > 0.0) || cfg.max_iters < 1 || !(cfg.tolerance >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "ADMM needs alpha > 0 and max_iters >= 1");
  }
  if (omega.empty()) {
    throw Error(ErrorCode::InsufficientSamples, "no observed entries");
  }
  using Clock = std::chrono::steady_clock;
  auto const start = Clock::now();

  double const alpha = cfg.alpha;
  double const lambda = cfg.lambda > 0.0 ? cfg.lambda : default_lambda(project(observed, omega));
  double const weight = lambda / static_cast<double>(observed.depth());
  DenseTensor3 const data = project(observed, omega);
  DenseTensor3 const mask = omega.mask();
  double const data_norm = frobenius_norm(data);

  DenseTensor3 x(observed.dims());
  DenseTensor3 z(observed.dims());
  DenseTensor3 q(observed.dims());
  SolveReport report;
  report.rse_on_observed = !ground_truth.has_value();

  for (Index it = 0; it < cfg.max_iters; ++it) {
    for (Index p = 0; p < x.size(); ++p) {
      double const zp = z.data()[p];
      double const qp = q.data()[p];
      x.data()[p] = mask.data()[p] > 0.0 ? (data.data()[p] + alpha * zp - qp) / (1.0 + alpha) : zp - qp / alpha;
    }
    DenseTensor3 shifted = x;
    for (Index p = 0; p < x.size(); ++p) {
      shifted.data()[p] += q.data()[p] / alpha;
    }
    double z_tnn = 0.0;
    z = shrink(shifted, lambda / alpha, &z_tnn);
    DenseTensor3 const gap = x - z;
    q += gap * alpha;

    double fit = 0.0;
    double train = 0.0;
    for (Index p : omega.linear()) {
      double const d = data.data()[p] - x.data()[p];
      fit += d * d;
    }
    train = data_norm > 0.0 ? std::sqrt(fit) / data_norm : 0.0;
    double inner = 0.0;
    for (Index p = 0; p < x.size(); ++p) {
      inner += gap.data()[p] * q.data()[p];
    }
    double const gap_norm = frobenius_norm(gap);
    double const objective = 0.5 * fit + weight * z_tnn + inner + 0.5 * alpha * gap_norm * gap_norm;

    double const value = ground_truth ? rse(x, *ground_truth) : train;
    double const elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    report.rse.push_back(value);
    report.seconds.push_back(elapsed);
    report.objective.push_back(objective);

    if (cfg.rse_threshold && value <= *cfg.rse_threshold) {
      report.reached_threshold = true;
      break;
    }
    if (cfg.time_limit > 0.0 && elapsed > cfg.time_limit) {
      report.timed_out = true;
      break;
    }
    if (cfg.tolerance > 0.0 && report.objective.size() >= 2) {
      double const previous = report.objective[report.objective.size() - 2];
      if (std::abs(objective - previous) < cfg.tolerance * std::max(1.0, std::abs(previous))) {
        break;
      }
    }
  }
  report.estimate = x;
  report.x = std::move(x);
  report.y = std::move(z);
  attach_fit(report);
  return report;
}

} // namespace tubal
