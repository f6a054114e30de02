#include "tubal/altmin.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "frequency.hpp"
#include "tubal/algebra.hpp"
#include "tubal/tsvd.hpp"

namespace tubal {

QrFactors qr_tensor(const DenseTensor3& y)
{
  Index const n = y.rows();
  Index const r = y.cols();
  Index const k = y.depth();
  if (r > n) {
    throw Error(ErrorCode::DimensionMismatch, "qr_tensor needs a tall tensor, got " + to_string(y.dims()));
  }
  FreqTensor3 const f = fft_mode3(y);
  FreqTensor3 q(n, r, k);
  FreqTensor3 rf(r, r, k);
  for (Index kappa = 0; kappa < detail::independent_slices(k); ++kappa) {
    auto const qr = detail::slice_qr(f.slice(kappa), detail::self_conjugate(kappa, k));
    q.slice(kappa) = qr.q;
    rf.slice(kappa) = qr.r;
  }
  detail::mirror_conjugate(q);
  detail::mirror_conjugate(rf);
  return QrFactors{ifft_mode3(q), ifft_mode3(rf)};
}

double subspace_distance(const DenseTensor3& u, const DenseTensor3& x)
{
  DenseTensor3 const inside = tprod(u, tprod(ttranspose(u), x));
  return spectral_norm(x - inside);
}

DenseTensor3 initialize(const DenseTensor3& observed, const SampleSet& omega, Index r, double mu0, const RngSeed& seed)
{
  if (omega.empty()) {
    throw Error(ErrorCode::EmptySampleSet, "initialization needs observations");
  }
  Index const m = observed.rows();
  Index const k = observed.depth();
  double const p_hat = static_cast<double>(omega.size()) / static_cast<double>(observed.size());
  DenseTensor3 const a = top_r_eigenslices(project(observed, omega) * (1.0 / p_hat), r);

  auto engine = seed.derive("mixing").engine();
  DenseTensor3 const mixing = qr_tensor(gaussian_tensor({r, r, k}, engine)).q;
  DenseTensor3 z = tprod(a, mixing);

  double const cap = std::sqrt(8.0 * mu0 * std::log(static_cast<double>(m)) / static_cast<double>(m));
  if (cap > 0.0) {
    for (Index j = 0; j < z.cols(); ++j) {
      for (Index i = 0; i < m; ++i) {
        TubeScalar tube = z.tube(i, j);
        double const norm = tube.norm();
        if (norm > cap) {
          z.set_tube(i, j, tube * (cap / norm));
        }
      }
    }
  }
  return qr_tensor(z).q;
}

SmoothQrResult smooth_qr(const DenseTensor3& y, double eps, double mu, const RngSeed& seed)
{
  if (!(eps > 0.0) || !(mu >= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "smooth_qr needs eps > 0 and mu >= 1");
  }
  Index const n = y.rows();
  SmoothQrResult out{qr_tensor(y).q, 0.0};
  double const bound = spectral_norm(y);
  if (!(bound > 0.0)) {
    return out;
  }
  auto engine = seed.engine();
  std::normal_distribution<double> normal(0.0, 1.0);
  double sigma = eps * bound / static_cast<double>(n);
  // Slack keeps round-off from re-entering the loop at mu = n / r.
  while (coherence(out.z) > mu * (1.0 + 1e-12) && sigma <= bound) {
    double const sd = sigma / std::sqrt(static_cast<double>(n));
    DenseTensor3 perturbed = y;
    for (double& v : perturbed.values()) {
      v += sd * normal(engine);
    }
    out.z = qr_tensor(perturbed).q;
    out.sigma_used = sigma;
    sigma *= 2.0;
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double observed_rse(const DenseTensor3& estimate, const DenseTensor3& observed, const SampleSet& omega)
{
  double num = 0.0;
  double den = 0.0;
  for (Index p : omega.linear()) {
    double const d = estimate.data()[p] - observed.data()[p];
    num += d * d;
    den += observed.data()[p] * observed.data()[p];
  }
  if (!(den > 0.0)) {
    throw Error(ErrorCode::ZeroTruth, "observed entries are all zero");
  }
  return std::sqrt(num / den);
}

class Recorder {
public:
  Recorder(const DenseTensor3& observed, const SampleSet& omega, const SolverConfig& cfg,
           const std::optional<DenseTensor3>& truth)
    : observed_{observed}
    , omega_{omega}
    , cfg_{cfg}
    , truth_{truth}
    , start_{Clock::now()}
  {
    report_.rse_on_observed = !truth.has_value();
  }

  /// Records one iteration; returns true when a stop rule fires.
  bool record(const DenseTensor3& x, const DenseTensor3& y)
  {
    DenseTensor3 estimate = tprod(x, ttranspose(y));
    double const train = observed_rse(estimate, observed_, omega_);
    double const value = truth_ ? rse(estimate, *truth_) : train;
    double const elapsed = std::chrono::duration<double>(Clock::now() - start_).count();
    report_.rse.push_back(value);
    report_.seconds.push_back(elapsed);
    train_.push_back(train);
    report_.estimate = std::move(estimate);
    report_.x = x;
    report_.y = y;

    if (cfg_.rse_threshold && value <= *cfg_.rse_threshold) {
      report_.reached_threshold = true;
      return true;
    }
    if (cfg_.time_limit > 0.0 && elapsed > cfg_.time_limit) {
      report_.timed_out = true;
      return true;
    }
    Index const w = cfg_.stall_window;
    Index const done = static_cast<Index>(train_.size());
    if (w > 0 && done > w) {
      double const gain = train_[static_cast<std::size_t>(done - 1 - w)] - train_.back();
      if (gain < cfg_.stall_tolerance) {
        return true;
      }
    }
    return false;
  }

  SolveReport& report() { return report_; }

private:
  const DenseTensor3& observed_;
  const SampleSet& omega_;
  const SolverConfig& cfg_;
  const std::optional<DenseTensor3>& truth_;
  Clock::time_point start_;
  SolveReport report_;
  std::vector<double> train_;
};

void validate(const DenseTensor3& observed, const SampleSet& omega, const SolverConfig& cfg,
              const std::optional<DenseTensor3>& truth)
{
  if (!(observed.dims() == omega.dims()) || (truth && !(truth->dims() == observed.dims()))) {
    throw Error(ErrorCode::DimensionMismatch, "observed, mask and truth must share dimensions");
  }
  if (cfg.rank < 1 || cfg.rank > std::min(observed.rows(), observed.cols())) {
    throw Error(ErrorCode::RankOutOfRange, "target rank " + std::to_string(cfg.rank) + " for " + to_string(observed.dims()));
  }
  if (cfg.iterations < 1 || !(cfg.epsilon > 0.0) || !(cfg.mu0 >= 1.0) || cfg.median_subsets < 0) {
    throw Error(ErrorCode::InvalidArgument, "solver needs iterations >= 1, epsilon > 0, mu0 >= 1");
  }
  if (omega.empty()) {
    throw Error(ErrorCode::InsufficientSamples, "no observed entries");
  }
}

SolveReport run_simplified(const DenseTensor3& observed, const SampleSet& omega, const SolverConfig& cfg,
                           const std::optional<DenseTensor3>& truth)
{
  Recorder rec(observed, omega, cfg, truth);
  DenseTensor3 const data = project(observed, omega);
  DenseTensor3 x;
  if (cfg.spectral_init) {
    x = initialize(data, omega, cfg.rank, cfg.mu0, cfg.seed.derive("init"));
  } else {
    auto engine = cfg.seed.derive("init").engine();
    x = qr_tensor(gaussian_tensor({observed.rows(), cfg.rank, observed.depth()}, engine)).q;
  }
  for (Index l = 0; l < cfg.iterations; ++l) {
    DenseTensor3 const y = ls_solve_y(data, omega, x, cfg.ls);
    x = ls_solve_x(data, omega, y, cfg.ls);
    if (rec.record(x, y)) {
      break;
    }
  }
  return std::move(rec.report());
}

SolveReport run_full(const DenseTensor3& observed, const SampleSet& omega, const SolverConfig& cfg,
                     const std::optional<DenseTensor3>& truth)
{
  Recorder rec(observed, omega, cfg, truth);
  RngSeed const seed = cfg.seed;
  auto const halves = split(omega, 2, seed.derive("split-0"));
  auto const rounds = split(halves[1], cfg.iterations, seed.derive("split-plus"));
  if (halves[0].empty()) {
    throw Error(ErrorCode::InsufficientSamples, "initialization subset is empty");
  }
  for (std::size_t l = 0; l < rounds.size(); ++l) {
    if (rounds[l].empty()) {
      throw Error(ErrorCode::InsufficientSamples, "sample subset " + std::to_string(l + 1) + " is empty",
                  static_cast<Index>(l + 1));
    }
  }

  Index const subsets_y = cfg.median_subsets > 0 ? cfg.median_subsets : default_median_subsets(observed.cols());
  Index const subsets_x = cfg.median_subsets > 0 ? cfg.median_subsets : default_median_subsets(observed.rows());

  DenseTensor3 x = initialize(project(observed, halves[0]), halves[0], cfg.rank, cfg.mu0, seed.derive("init"));
  for (Index l = 0; l < cfg.iterations; ++l) {
    auto const& part = rounds[static_cast<std::size_t>(l)];
    DenseTensor3 const data = project(observed, part);
    RngSeed const step = seed.derive("round").derive(static_cast<std::uint64_t>(l + 1));

    DenseTensor3 y = median_ls_y(data, part, x, subsets_y, step.derive("median-y"), cfg.ls);
    y = smooth_qr(y, cfg.epsilon, cfg.mu0, step.derive("smooth-y")).z;
    rec.report().orthonormality.push_back(orthonormality_error(y));

    DenseTensor3 const x_raw = median_ls_x(data, part, y, subsets_x, step.derive("median-x"), cfg.ls);
    x = smooth_qr(x_raw, cfg.epsilon, cfg.mu0, step.derive("smooth-x")).z;
    rec.report().orthonormality.push_back(orthonormality_error(x));

    // Y is orthonormal, so the un-normalized X carries the scale of T.
    bool const stop = rec.record(x_raw, y);
    rec.report().x = x;
    if (stop) {
      break;
    }
  }
  return std::move(rec.report());
}

} // namespace

SolveReport tubal_alt_min(const DenseTensor3& observed, const SampleSet& omega, const SolverConfig& cfg,
                          const std::optional<DenseTensor3>& ground_truth)
{
  validate(observed, omega, cfg, ground_truth);
  SolveReport report = cfg.variant == SolverConfig::Variant::Full ? run_full(observed, omega, cfg, ground_truth)
                                                                   : run_simplified(observed, omega, cfg, ground_truth);
  attach_fit(report);
  return report;
}

std::vector<double> noisy_subspace_iteration(const DenseTensor3& t, const DenseTensor3& x0, Index steps,
                                             const NoiseSource& noise)
{
  if (t.rows() != t.cols() || x0.rows() != t.rows() || x0.depth() != t.depth()) {
    throw Error(ErrorCode::DimensionMismatch,
                "subspace iteration on " + to_string(t.dims()) + " from " + to_string(x0.dims()));
  }
  DenseTensor3 const u = top_r_eigenslices(t, x0.cols());
  std::vector<double> trace{subspace_distance(u, x0)};
  DenseTensor3 x = x0;
  for (Index l = 1; l <= steps; ++l) {
    DenseTensor3 z = tprod(t, x);
    if (noise) {
      z += noise(l, z.dims());
    }
    x = qr_tensor(z).q;
    trace.push_back(subspace_distance(u, x));
  }
  return trace;
}

} // namespace tubal
