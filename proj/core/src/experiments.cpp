#include "tubal/experiments.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/format.h>

#include "tubal/algebra.hpp"
#include "tubal/io.hpp"

namespace tubal {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::ofstream open_csv(const std::filesystem::path& path, std::string_view header)
{
  std::filesystem::create_directories(path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  }
  out << header << '\n';
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path)
{
  out.flush();
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  }
}

SolveReport run_altmin(Algorithm algorithm, const DenseTensor3& observed, const SampleSet& omega,
                       const ExperimentSpec& spec, const RngSeed& seed, const std::optional<DenseTensor3>& truth)
{
  SolverConfig cfg = spec.solver;
  cfg.rank = spec.rank;
  cfg.seed = seed;
  cfg.variant = algorithm == Algorithm::AltMinFull ? SolverConfig::Variant::Full : SolverConfig::Variant::Simplified;
  return tubal_alt_min(observed, omega, cfg, truth);
}

SolveReport run_admm(const DenseTensor3& observed, const SampleSet& omega, const ExperimentSpec& spec,
                     const std::optional<DenseTensor3>& truth)
{
  if (spec.admm.lambda > 0.0) {
    return admm_complete(observed, omega, spec.admm, truth);
  }
  std::optional<SolveReport> best;
  for (double lambda : lambda_grid(project(observed, omega))) {
    AdmmConfig cfg = spec.admm;
    cfg.lambda = lambda;
    SolveReport report = admm_complete(observed, omega, cfg, truth);
    if (!best || report.final_rse() < best->final_rse()) {
      best = std::move(report);
    }
  }
  return std::move(*best);
}

double mean_of_finite(const std::vector<double>& values)
{
  double sum = 0.0;
  Index count = 0;
  for (double v : values) {
    if (std::isfinite(v)) {
      sum += v;
      ++count;
    }
  }
  return count > 0 ? sum / static_cast<double>(count) : kNan;
}

RngSeed instance_seed(const ExperimentSpec& spec, Index rep) { return RngSeed{spec.seed, "instance"}.derive(rep); }

RngSeed sample_seed(const ExperimentSpec& spec, double rate, Index rep)
{
  return RngSeed{spec.seed, "omega"}.derive(fmt::format("{}", rate)).derive(rep);
}

RngSeed solver_seed(const ExperimentSpec& spec, Algorithm a, double rate, Index rep)
{
  return RngSeed{spec.seed, "solver"}.derive(to_string(a)).derive(fmt::format("{}", rate)).derive(rep);
}

} // namespace

std::string_view to_string(Algorithm a)
{
  switch (a) {
  case Algorithm::AltMinFull:
    return "altmin-full";
  case Algorithm::AltMinSimple:
    return "altmin-simple";
  case Algorithm::TnnAdmm:
    return "tnn-admm";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name)
{
  for (Algorithm a : {Algorithm::AltMinFull, Algorithm::AltMinSimple, Algorithm::TnnAdmm}) {
    if (name == to_string(a)) {
      return a;
    }
  }
  return std::nullopt;
}

void validate(const ExperimentSpec& spec)
{
  if (spec.rates.empty()) {
    throw Error(ErrorCode::InvalidArgument, "at least one sampling rate is required");
  }
  for (double r : spec.rates) {
    if (!(r > 0.0 && r <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("sampling rate {} outside (0, 1]", r));
    }
  }
  if (spec.reps < 1) {
    throw Error(ErrorCode::InvalidArgument, "repetitions must be at least 1");
  }
  if (spec.algorithms.empty()) {
    throw Error(ErrorCode::InvalidArgument, "no algorithm selected");
  }
  if (spec.dims.m < 1 || spec.dims.n < 1 || spec.dims.k < 1) {
    throw Error(ErrorCode::InvalidArgument, "tensor dimensions must be positive");
  }
}

std::string format_trace_row(const TraceRow& row)
{
  return fmt::format("{},{},{},{},{},{}", row.algorithm, row.rate, row.rep, row.iter, row.rse, row.seconds);
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& rows)
{
  auto out = open_csv(path, kTraceHeader);
  for (auto const& row : rows) {
    out << format_trace_row(row) << '\n';
  }
  finish(out, path);
}

SolveReport run_algorithm(Algorithm algorithm, const DenseTensor3& observed, const SampleSet& omega,
                          const ExperimentSpec& spec, const RngSeed& seed, const std::optional<DenseTensor3>& truth)
{
  if (algorithm == Algorithm::TnnAdmm) {
    return run_admm(observed, omega, spec, truth);
  }
  return run_altmin(algorithm, observed, omega, spec, seed, truth);
}

SweepResult run_recovery_sweep(const ExperimentSpec& spec)
{
  validate(spec);
  SweepResult result;
  std::vector<std::vector<std::vector<double>>> finals(
    spec.algorithms.size(), std::vector<std::vector<double>>(spec.rates.size()));
  for (Index rep = 1; rep <= spec.reps; ++rep) {
    auto const instance = synth_low_tubal_rank(spec.dims, spec.rank, instance_seed(spec, rep));
    std::optional<DenseTensor3> const truth = instance.tensor;
    for (std::size_t ri = 0; ri < spec.rates.size(); ++ri) {
      double const rate = spec.rates[ri];
      SampleSet const omega = sample_bernoulli(spec.dims, rate, sample_seed(spec, rate, rep));
      DenseTensor3 const observed = project(instance.tensor, omega);
      for (std::size_t ai = 0; ai < spec.algorithms.size(); ++ai) {
        Algorithm const a = spec.algorithms[ai];
        TraceRow row{std::string(to_string(a)), rate, rep, 0, kNan, 0.0};
        try {
          SolveReport const report = run_algorithm(a, observed, omega, spec, solver_seed(spec, a, rate, rep), truth);
          row.iter = report.iterations();
          row.rse = report.final_rse();
          row.seconds = report.seconds.empty() ? 0.0 : report.seconds.back();
        } catch (const Error&) {
          // Recorded as a NaN row; the sweep continues.
        }
        finals[ai][ri].push_back(row.rse);
        result.rows.push_back(std::move(row));
      }
    }
  }
  for (std::size_t ai = 0; ai < spec.algorithms.size(); ++ai) {
    for (std::size_t ri = 0; ri < spec.rates.size(); ++ri) {
      double seconds = 0.0;
      Index iters = 0;
      Index count = 0;
      for (auto const& row : result.rows) {
        if (row.algorithm == to_string(spec.algorithms[ai]) && row.rate == spec.rates[ri] && std::isfinite(row.rse)) {
          seconds += row.seconds;
          iters += row.iter;
          ++count;
        }
      }
      result.means.push_back(TraceRow{std::string(to_string(spec.algorithms[ai])), spec.rates[ri], 0,
                                      count > 0 ? iters / count : 0, mean_of_finite(finals[ai][ri]),
                                      count > 0 ? seconds / static_cast<double>(count) : kNan});
    }
  }
  if (!spec.out_dir.empty()) {
    write_trace_csv(spec.out_dir / "sweep.csv", result.rows);
    write_trace_csv(spec.out_dir / "sweep_mean.csv", result.means);
  }
  return result;
}

ConvergenceResult run_convergence(const ExperimentSpec& spec)
{
  validate(spec);
  ConvergenceResult result;
  double const rate = spec.rates.front();
  Index const rep = 1;
  auto const instance = synth_low_tubal_rank(spec.dims, spec.rank, instance_seed(spec, rep));
  std::optional<DenseTensor3> const truth = instance.tensor;
  SampleSet const omega = sample_bernoulli(spec.dims, rate, sample_seed(spec, rate, rep));
  DenseTensor3 const observed = project(instance.tensor, omega);
  for (Algorithm a : spec.algorithms) {
    std::string const label(to_string(a));
    SolveReport const report = run_algorithm(a, observed, omega, spec, solver_seed(spec, a, rate, rep), truth);
    for (Index it = 0; it < report.iterations(); ++it) {
      auto const idx = static_cast<std::size_t>(it);
      result.rows.push_back(TraceRow{label, rate, rep, it + 1, report.rse[idx], report.seconds[idx]});
    }
    result.fits.push_back(ConvergenceFit{label, report.slope, report.intercept});
  }
  if (!spec.out_dir.empty()) {
    write_trace_csv(spec.out_dir / "converge.csv", result.rows);
    auto const path = spec.out_dir / "converge_fit.csv";
    auto out = open_csv(path, "algorithm,slope,intercept");
    for (auto const& fit : result.fits) {
      out << fmt::format("{},{},{}\n", fit.algorithm, fit.slope, fit.intercept);
    }
    finish(out, path);
  }
  return result;
}

std::vector<ScalingRow> run_runtime_scaling(const ExperimentSpec& spec)
{
  validate(spec);
  std::vector<ScalingRow> rows;
  double const rate = spec.rates.front();
  for (Index size : spec.sizes) {
    ExperimentSpec local = spec;
    local.dims = Dims{size, size, spec.dims.k};
    local.solver.rse_threshold = spec.threshold;
    local.solver.time_limit = spec.timeout;
    local.admm.rse_threshold = spec.threshold;
    local.admm.time_limit = spec.timeout;
    for (Index rep = 1; rep <= spec.reps; ++rep) {
      auto const instance = synth_low_tubal_rank(local.dims, spec.rank, instance_seed(local, rep));
      std::optional<DenseTensor3> const truth = instance.tensor;
      SampleSet const omega = sample_bernoulli(local.dims, rate, sample_seed(local, rate, rep));
      DenseTensor3 const observed = project(instance.tensor, omega);
      for (Algorithm a : spec.algorithms) {
        ScalingRow row{std::string(to_string(a)), local.dims, rate, rep, 0, kNan, kNan, "error"};
        try {
          SolveReport const report = run_algorithm(a, observed, omega, local, solver_seed(local, a, rate, rep), truth);
          row.iter = report.iterations();
          row.rse = report.final_rse();
          row.seconds = report.seconds.empty() ? 0.0 : report.seconds.back();
          row.status = report.reached_threshold ? "ok" : report.timed_out ? "timeout" : "not-reached";
        } catch (const Error&) {
          row.status = "error";
        }
        rows.push_back(std::move(row));
      }
    }
  }
  if (!spec.out_dir.empty()) {
    auto const path = spec.out_dir / "scale.csv";
    auto out = open_csv(path, kScalingHeader);
    for (auto const& r : rows) {
      out << fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.algorithm, r.dims.m, r.dims.n, r.dims.k, r.rate, r.rep, r.iter,
                         r.rse, r.seconds, r.status);
    }
    finish(out, path);
  }
  return rows;
}

CompleteFileResult complete_file(const std::filesystem::path& input, const std::optional<std::filesystem::path>& mask_path,
                                 Algorithm algorithm, const ExperimentSpec& spec, const std::filesystem::path& output)
{
  DenseTensor3 const tensor = read_tensor(input);
  SampleSet const omega = mask_path ? read_sample_set(*mask_path)
                                    : sample_bernoulli(tensor.dims(), spec.rates.front(), RngSeed{spec.seed, "omega"});
  if (!(omega.dims() == tensor.dims())) {
    throw Error(ErrorCode::DimensionMismatch, "mask " + to_string(omega.dims()) + " for tensor " + to_string(tensor.dims()));
  }
  DenseTensor3 const observed = project(tensor, omega);
  ExperimentSpec local = spec;
  local.dims = tensor.dims();
  if (local.admm.lambda <= 0.0) {
    // Without ground truth a grid search would always pick the smallest weight.
    local.admm.lambda = default_lambda(observed);
  }
  CompleteFileResult result;
  result.report = run_algorithm(algorithm, observed, omega, local, RngSeed{spec.seed, "solver"}, std::nullopt);
  result.observed_residual = result.report.final_rse();
  write_tensor(output, result.report.estimate);

  std::filesystem::path trace_path = output;
  trace_path += ".csv";
  std::vector<TraceRow> rows;
  for (Index it = 0; it < result.report.iterations(); ++it) {
    auto const idx = static_cast<std::size_t>(it);
    rows.push_back(TraceRow{std::string(to_string(algorithm)), static_cast<double>(omega.size()) / tensor.size(), 1, it + 1,
                            result.report.rse[idx], result.report.seconds[idx]});
  }
  write_trace_csv(trace_path, rows);
  return result;
}

} // namespace tubal
