#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <tubal/tubal.hpp>

namespace fs = std::filesystem;
using namespace tubal;

namespace {

enum Exit : int { kOk = 0, kBadArguments = 2, kIoFailure = 3, kSolverFailure = 4 };

struct Options {
  std::vector<Index> size{50, 50, 10};
  Index rank = 3;
  std::vector<double> rates{0.5};
  std::vector<std::string> algorithms{"altmin-simple", "tnn-admm"};
  Index iterations = 10;
  double mu0 = 4.0;
  double eps = 1e-4;
  double lambda = 0.0;
  double alpha = 1.0;
  std::uint64_t seed = 1;
  Index reps = 1;
  std::string out = ".";
  double threshold = 1e-5;
  double timeout = 120.0;
  std::vector<Index> sizes{25, 50, 75, 100};
  Index admm_iters = 500;
};

void add_common(CLI::App* cmd, Options& o)
{
  cmd->add_option("--size", o.size, "tensor dimensions m,n,k")->delimiter(',')->expected(3);
  cmd->add_option("--rank", o.rank, "tubal rank r")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--out", o.out, "output directory");
}

void add_solver(CLI::App* cmd, Options& o)
{
  cmd->add_option("--rates", o.rates, "sampling rates")->delimiter(',');
  cmd->add_option("--algo", o.algorithms, "altmin-full, altmin-simple, tnn-admm")
    ->delimiter(',')
    ->check(CLI::IsMember({"altmin-full", "altmin-simple", "tnn-admm"}));
  cmd->add_option("--iters", o.iterations, "alternating minimization iterations L")->check(CLI::PositiveNumber);
  cmd->add_option("--mu0", o.mu0, "coherence budget");
  cmd->add_option("--eps", o.eps, "SmoothQR noise scale");
  cmd->add_option("--lambda", o.lambda, "TNN weight; 0 picks from a grid (default when no truth)");
  cmd->add_option("--alpha", o.alpha, "ADMM penalty")->check(CLI::PositiveNumber);
  cmd->add_option("--admm-iters", o.admm_iters, "ADMM iteration cap")->check(CLI::PositiveNumber);
  cmd->add_option("--reps", o.reps, "repetitions")->check(CLI::PositiveNumber);
  cmd->add_option("--threshold", o.threshold, "RSE threshold for runtime scaling");
}

ExperimentSpec to_spec(const Options& o)
{
  ExperimentSpec spec;
  spec.dims = {o.size[0], o.size[1], o.size[2]};
  spec.rank = o.rank;
  spec.rates = o.rates;
  spec.algorithms.clear();
  for (const std::string& name : o.algorithms) {
    spec.algorithms.push_back(*parse_algorithm(name));
  }
  spec.solver.rank = o.rank;
  spec.solver.iterations = o.iterations;
  spec.solver.mu0 = o.mu0;
  spec.solver.epsilon = o.eps;
  spec.admm.lambda = o.lambda;
  spec.admm.alpha = o.alpha;
  spec.admm.max_iters = o.admm_iters;
  spec.seed = o.seed;
  spec.reps = o.reps;
  spec.out_dir = o.out;
  spec.sizes = o.sizes;
  spec.threshold = o.threshold;
  spec.timeout = o.timeout;
  validate(spec);
  fs::create_directories(spec.out_dir);
  return spec;
}

int exit_code(const Error& err)
{
  switch (err.code()) {
  case ErrorCode::IoError:
  case ErrorCode::BadMagic:
  case ErrorCode::TruncatedFile:
  case ErrorCode::DimOverflow:
    return kIoFailure;
  case ErrorCode::InvalidArgument:
  case ErrorCode::RankOutOfRange:
    return kBadArguments;
  default:
    return kSolverFailure;
  }
}

void generate(const Options& o)
{
  Dims const dims{o.size[0], o.size[1], o.size[2]};
  SyntheticInstance const inst = synth_low_tubal_rank(dims, o.rank, {o.seed, "instance"});
  fs::path const out(o.out);
  fs::create_directories(out);
  write_tensor(out / "truth.t3b", inst.tensor);
  SampleSet const omega = sample_bernoulli(dims, o.rates.front(), {o.seed, "omega"});
  write_sample_set(out / "mask.txt", omega);
  write_tensor(out / "observed.t3b", project(inst.tensor, omega));
  fmt::print("wrote {}x{}x{} rank-{} instance and a {} sample mask to {}\n", dims.m, dims.n, dims.k, o.rank, omega.size(),
             out.string());
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Low-tubal-rank tensor completion"};
  app.require_subcommand(1);
  Options o;

  CLI::App* gen = app.add_subcommand("gen", "synthesize an instance: truth.t3b, mask.txt, observed.t3b");
  add_common(gen, o);
  gen->add_option("--rates", o.rates, "sampling rate of the written mask (first value)")->delimiter(',');

  CLI::App* sweep = app.add_subcommand("sweep", "final RSE against sampling rate");
  add_common(sweep, o);
  add_solver(sweep, o);

  CLI::App* converge = app.add_subcommand("converge", "per-iteration RSE and fitted log10 slope");
  add_common(converge, o);
  add_solver(converge, o);

  CLI::App* scale = app.add_subcommand("scale", "time to reach the RSE threshold against size");
  add_common(scale, o);
  add_solver(scale, o);
  scale->add_option("--sizes", o.sizes, "square sizes n (each n x n x k)")->delimiter(',');
  scale->add_option("--timeout", o.timeout, "seconds per run");

  std::string input;
  std::string output;
  std::optional<std::string> mask;
  CLI::App* complete = app.add_subcommand("complete", "complete a T3B tensor");
  add_common(complete, o);
  add_solver(complete, o);
  complete->add_option("input", input, "input T3B file")->required();
  complete->add_option("--mask", mask, "observed entries (sample-set text); default: Bernoulli at the first rate");
  complete->add_option("--output", output, "output T3B file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int const code = app.exit(err);
    return code == 0 ? kOk : kBadArguments;
  }

  try {
    if (gen->parsed()) {
      generate(o);
    } else if (sweep->parsed()) {
      SweepResult const r = run_recovery_sweep(to_spec(o));
      for (const TraceRow& row : r.means) {
        fmt::print("{}\n", format_trace_row(row));
      }
    } else if (converge->parsed()) {
      ConvergenceResult const r = run_convergence(to_spec(o));
      for (const ConvergenceFit& fit : r.fits) {
        fmt::print("{}: log10 RSE = {:.4f} iter + {:.4f}\n", fit.algorithm, fit.slope, fit.intercept);
      }
    } else if (scale->parsed()) {
      for (const ScalingRow& row : run_runtime_scaling(to_spec(o))) {
        fmt::print("{} {}x{}x{}: {} after {} iterations, {:.3f} s, RSE {:.3e}\n", row.algorithm, row.dims.m, row.dims.n,
                   row.dims.k, row.status, row.iter, row.seconds, row.rse);
      }
    } else if (complete->parsed()) {
      if (o.algorithms.size() != 1) {
        o.algorithms = {o.algorithms.front()};
      }
      ExperimentSpec const spec = to_spec(o);
      std::optional<fs::path> const mask_path = mask ? std::optional<fs::path>(*mask) : std::nullopt;
      CompleteFileResult const r = complete_file(input, mask_path, spec.algorithms.front(), spec, output);
      fmt::print("observed-entry residual {:.3e} after {} iterations\n", r.observed_residual, r.report.iterations());
    }
  } catch (const Error& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return exit_code(err);
  } catch (const fs::filesystem_error& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kIoFailure;
  }
  return kOk;
}
