#include "tubal/tls.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tubal/algebra.hpp"
#include "tubal/parallel.hpp"

namespace tubal {

namespace {

SliceSystem assemble(const FreqTensor3& observed_freq, const FreqTensor3& mask_freq, const FreqTensor3& a_freq, Index j,
                     bool skip_unobserved)
{
  Index const p = a_freq.rows();
  Index const r = a_freq.cols();
  Index const k = a_freq.depth();
  if (observed_freq.rows() != p || !(observed_freq.dims() == mask_freq.dims()) || observed_freq.depth() != k) {
    throw Error(ErrorCode::DimensionMismatch,
                "slice system with data " + to_string(observed_freq.dims()) + " and factor " + to_string(a_freq.dims()));
  }
  if (j < 0 || j >= observed_freq.cols()) {
    throw Error(ErrorCode::IndexOutOfRange, "lateral slice " + std::to_string(j));
  }

  SliceSystem sys;
  sys.j = j;
  for (Index i = 0; i < p; ++i) {
    // The DC coefficient of a 0/1 tube counts its observations.
    if (!skip_unobserved || mask_freq(i, j, 0).real() > 0.5) {
      sys.rows.push_back(i);
    }
  }
  Index const blocks = static_cast<Index>(sys.rows.size());
  sys.b.resize(blocks * k);
  sys.design.setZero(blocks * k, r * k);
  double const scale = 1.0 / static_cast<double>(k);
  for (Index row = 0; row < blocks; ++row) {
    Index const i = sys.rows[static_cast<std::size_t>(row)];
    for (Index ko = 0; ko < k; ++ko) {
      sys.b[row * k + ko] = observed_freq(i, j, ko);
      for (Index ki = 0; ki < k; ++ki) {
        Complex const c = scale * mask_freq(i, j, (ko - ki + k) % k);
        for (Index s = 0; s < r; ++s) {
          sys.design(row * k + ko, s * k + ki) = c * a_freq(i, s, ki);
        }
      }
    }
  }
  return sys;
}

} // namespace

SliceSystem build_slice_system(const FreqTensor3& observed_freq, const FreqTensor3& mask_freq, const FreqTensor3& a_freq,
                               Index j)
{
  return assemble(observed_freq, mask_freq, a_freq, j, false);
}

SliceSystem build_observed_slice_system(const FreqTensor3& observed_freq, const FreqTensor3& mask_freq,
                                        const FreqTensor3& a_freq, Index j)
{
  return assemble(observed_freq, mask_freq, a_freq, j, true);
}

Eigen::VectorXcd solve_slice_system(const SliceSystem& system, const LsOptions& opts)
{
  if (!(opts.regularization >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "ridge regularization must be non-negative");
  }
  Index const unknowns = system.design.cols();
  if (system.design.rows() == 0) {
    if (opts.rank_deficiency == LsOptions::RankDeficiency::Error && opts.regularization == 0.0) {
      throw Error(ErrorCode::RankDeficientSystem, "lateral slice " + std::to_string(system.j) + " has no observations",
                  system.j);
    }
    return Eigen::VectorXcd::Zero(unknowns);
  }

  Eigen::MatrixXcd lhs;
  Eigen::VectorXcd rhs;
  if (opts.solver == LsOptions::Solver::NormalEquations) {
    lhs = system.design.adjoint() * system.design;
    lhs.diagonal().array() += opts.regularization;
    rhs = system.design.adjoint() * system.b;
  } else if (opts.regularization > 0.0) {
    lhs.resize(system.design.rows() + unknowns, unknowns);
    lhs << system.design, std::sqrt(opts.regularization) * Eigen::MatrixXcd::Identity(unknowns, unknowns);
    rhs = Eigen::VectorXcd::Zero(lhs.rows());
    rhs.head(system.b.size()) = system.b;
  } else {
    lhs = system.design;
    rhs = system.b;
  }

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(lhs);
  if (cod.rank() < unknowns && opts.rank_deficiency == LsOptions::RankDeficiency::Error) {
    throw Error(ErrorCode::RankDeficientSystem,
                "lateral slice " + std::to_string(system.j) + " has rank " + std::to_string(cod.rank()) + " < "
                  + std::to_string(unknowns),
                system.j);
  }
  return cod.solve(rhs);
}

DenseTensor3 ls_solve_core(const DenseTensor3& observed, const SampleSet& omega, const DenseTensor3& a,
                           const LsOptions& opts)
{
  if (!(observed.dims() == omega.dims()) || a.rows() != observed.rows() || a.depth() != observed.depth()) {
    throw Error(ErrorCode::DimensionMismatch,
                "least squares with data " + to_string(observed.dims()) + ", mask " + to_string(omega.dims())
                  + " and factor " + to_string(a.dims()));
  }
  Index const q = observed.cols();
  Index const r = a.cols();
  Index const k = a.depth();
  FreqTensor3 const d_freq = fft_mode3(project(observed, omega));
  FreqTensor3 const m_freq = fft_mode3(omega.mask());
  FreqTensor3 const a_freq = fft_mode3(a);

  FreqTensor3 z_freq(r, q, k);
  parallel_for(q, [&](Index j) {
    SliceSystem const sys = build_observed_slice_system(d_freq, m_freq, a_freq, j);
    Eigen::VectorXcd const z = solve_slice_system(sys, opts);
    for (Index s = 0; s < r; ++s) {
      for (Index kappa = 0; kappa < k; ++kappa) {
        z_freq(s, j, kappa) = z[s * k + kappa];
      }
    }
  });
  // An underdetermined slice system can lose conjugate symmetry to rank
  // decisions near the cutoff. The real part of the inverse is the
  // symmetrized solution: still a least-squares minimizer, never longer.
  FreqTensor3 const z_time = ifft_mode3_complex(z_freq);
  DenseTensor3 out(z_time.dims());
  for (Index p = 0; p < out.size(); ++p) {
    out.data()[p] = z_time.data()[p].real();
  }
  return out;
}

DenseTensor3 ls_solve_y(const DenseTensor3& observed, const SampleSet& omega, const DenseTensor3& x,
                        const LsOptions& opts)
{
  return ttranspose(ls_solve_core(observed, omega, x, opts));
}

DenseTensor3 ls_solve_x(const DenseTensor3& observed, const SampleSet& omega, const DenseTensor3& y,
                        const LsOptions& opts)
{
  // tube_transpose(X * Y^T) = tube_transpose(Y^T) * tube_transpose(X).
  DenseTensor3 const a = tube_transpose(ttranspose(y));
  return tube_transpose(ls_solve_core(tube_transpose(observed), omega.tube_transposed(), a, opts));
}

DenseTensor3 elementwise_median(std::span<const DenseTensor3> tensors)
{
  if (tensors.empty()) {
    throw Error(ErrorCode::InvalidArgument, "median of no tensors");
  }
  Dims const dims = tensors.front().dims();
  for (auto const& t : tensors) {
    if (!(t.dims() == dims)) {
      throw Error(ErrorCode::DimensionMismatch, "median of " + to_string(dims) + " and " + to_string(t.dims()));
    }
  }
  std::size_t const count = tensors.size();
  DenseTensor3 out(dims);
  std::vector<double> column(count);
  for (Index p = 0; p < out.size(); ++p) {
    for (std::size_t t = 0; t < count; ++t) {
      column[t] = tensors[t].data()[p];
    }
    std::sort(column.begin(), column.end());
    out.data()[p] = count % 2 == 1 ? column[count / 2] : 0.5 * (column[count / 2 - 1] + column[count / 2]);
  }
  return out;
}

Index default_median_subsets(Index n)
{
  return std::max<Index>(1, std::lround(3.0 * std::log2(static_cast<double>(std::max<Index>(n, 1)))));
}

namespace {

template <typename Solve>
DenseTensor3 median_solve(const DenseTensor3& observed, const SampleSet& omega, Index subsets, const RngSeed& seed,
                          Solve solve)
{
  if (subsets == 1) {
    return solve(observed, omega);
  }
  auto const parts = split(omega, subsets, seed);
  std::vector<DenseTensor3> solutions;
  solutions.reserve(parts.size());
  for (auto const& part : parts) {
    solutions.push_back(solve(project(observed, part), part));
  }
  return elementwise_median(solutions);
}

} // namespace

DenseTensor3 median_ls_y(const DenseTensor3& observed, const SampleSet& omega, const DenseTensor3& x, Index subsets,
                         const RngSeed& seed, const LsOptions& opts)
{
  return median_solve(observed, omega, subsets, seed,
                      [&](const DenseTensor3& d, const SampleSet& w) { return ls_solve_y(d, w, x, opts); });
}

DenseTensor3 median_ls_x(const DenseTensor3& observed, const SampleSet& omega, const DenseTensor3& y, Index subsets,
                         const RngSeed& seed, const LsOptions& opts)
{
  return median_solve(observed, omega, subsets, seed,
                      [&](const DenseTensor3& d, const SampleSet& w) { return ls_solve_x(d, w, y, opts); });
}

} // namespace tubal
