#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tubal/admm.hpp"
#include "tubal/altmin.hpp"

namespace tubal {

enum class Algorithm { AltMinFull, AltMinSimple, TnnAdmm };

std::string_view to_string(Algorithm a);
/// Accepts "altmin-full", "altmin-simple" and "tnn-admm".
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct ExperimentSpec {
  Dims dims{50, 50, 10};
  Index rank = 3;
  std::vector<double> rates{0.5};
  std::vector<Algorithm> algorithms{Algorithm::AltMinSimple, Algorithm::TnnAdmm};
  SolverConfig solver;
  /// lambda <= 0 selects the best of lambda_grid() by final RSE.
  AdmmConfig admm;
  std::uint64_t seed = 1;
  Index reps = 1;
  /// CSV files are written here when non-empty.
  std::filesystem::path out_dir;

  // Runtime scaling: square sizes n x n x dims.k.
  std::vector<Index> sizes{25, 50, 75, 100};
  double threshold = 1e-5;
  double timeout = 120.0;
};

/// Throws InvalidArgument for rates outside (0, 1], reps < 1 or no
/// algorithms.
void validate(const ExperimentSpec& spec);

struct TraceRow {
  std::string algorithm;
  double rate = 0.0;
  Index rep = 0;
  Index iter = 0;
  double rse = 0.0; // NaN marks a failed run
  double seconds = 0.0;
};

inline constexpr std::string_view kTraceHeader = "algorithm,rate,rep,iter,rse,seconds";

std::string format_trace_row(const TraceRow& row);
void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& rows);

/// Runs one algorithm on one instance. TNN-ADMM with lambda <= 0 tries every
/// grid value and keeps the run with the lowest final RSE.
SolveReport run_algorithm(Algorithm algorithm, const DenseTensor3& observed, const SampleSet& omega,
                          const ExperimentSpec& spec, const RngSeed& seed,
                          const std::optional<DenseTensor3>& truth);

struct SweepResult {
  std::vector<TraceRow> rows;  // one per (algorithm, rate, rep), final RSE
  std::vector<TraceRow> means; // rep = 0, mean over successful reps
};

/// Final RSE against sampling rate. Files: sweep.csv, sweep_mean.csv.
SweepResult run_recovery_sweep(const ExperimentSpec& spec);

struct ConvergenceFit {
  std::string algorithm;
  double slope = 0.0;
  double intercept = 0.0;
};

struct ConvergenceResult {
  std::vector<TraceRow> rows; // one per iteration
  std::vector<ConvergenceFit> fits;
};

/// Per-iteration traces at spec.rates.front(). Files: converge.csv,
/// converge_fit.csv (algorithm,slope,intercept).
ConvergenceResult run_convergence(const ExperimentSpec& spec);

struct ScalingRow {
  std::string algorithm;
  Dims dims;
  double rate = 0.0;
  Index rep = 0;
  Index iter = 0;
  double rse = 0.0;
  double seconds = 0.0;
  /// ok, not-reached (iteration budget spent), timeout or error.
  std::string status;
};

inline constexpr std::string_view kScalingHeader = "algorithm,m,n,k,rate,rep,iter,rse,seconds,status";

/// Time to reach spec.threshold on n x n x k instances. File: scale.csv.
std::vector<ScalingRow> run_runtime_scaling(const ExperimentSpec& spec);

struct CompleteFileResult {
  SolveReport report;
  double observed_residual = 0.0;
};

/// Completes the tensor at `input`. Observed entries come from `mask_path`
/// (sample-set text) or, without one, from Bernoulli sampling at
/// spec.rates.front(). Writes the estimate to `output` and the trace to
/// `output` + ".csv".
CompleteFileResult complete_file(const std::filesystem::path& input, const std::optional<std::filesystem::path>& mask_path,
                                 Algorithm algorithm, const ExperimentSpec& spec, const std::filesystem::path& output);

} // namespace tubal
