#include "tubal/tsvd.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "frequency.hpp"
#include "tubal/algebra.hpp"
#include "tubal/parallel.hpp"

namespace tubal {

namespace {

void require_rank(const DenseTensor3& t, Index r)
{
  Index const limit = std::min(t.rows(), t.cols());
  if (r < 1 || r > limit) {
    throw Error(ErrorCode::RankOutOfRange,
                "rank " + std::to_string(r) + " outside [1, " + std::to_string(limit) + "] for " + to_string(t.dims()));
  }
}

std::vector<detail::SliceSvd> slice_svds(const FreqTensor3& f, bool full)
{
  Index const k = f.depth();
  std::vector<detail::SliceSvd> out(static_cast<std::size_t>(detail::independent_slices(k)));
  parallel_for(static_cast<Index>(out.size()), [&](Index kappa) {
    out[static_cast<std::size_t>(kappa)] = detail::slice_svd(f.slice(kappa), detail::self_conjugate(kappa, k), full);
  });
  return out;
}

// `keep` = number of leading singular triplets retained; `full` selects the
// square factor shapes.
TsvdFactors assemble(const DenseTensor3& t, Index keep, bool full)
{
  Index const m = t.rows();
  Index const n = t.cols();
  Index const k = t.depth();
  auto const svds = slice_svds(fft_mode3(t), full);

  Index const ucols = full ? m : keep;
  Index const vcols = full ? n : keep;
  FreqTensor3 fu(m, ucols, k);
  FreqTensor3 ftheta(full ? m : keep, full ? n : keep, k);
  FreqTensor3 fv(n, vcols, k);
  for (Index kappa = 0; kappa < detail::independent_slices(k); ++kappa) {
    auto const& svd = svds[static_cast<std::size_t>(kappa)];
    fu.slice(kappa) = svd.u.leftCols(ucols);
    fv.slice(kappa) = svd.v.leftCols(vcols);
    auto theta = ftheta.slice(kappa);
    for (Index s = 0; s < std::min(keep, svd.s.size()); ++s) {
      theta(s, s) = svd.s[s];
    }
  }
  detail::mirror_conjugate(fu);
  detail::mirror_conjugate(ftheta);
  detail::mirror_conjugate(fv);
  return TsvdFactors{ifft_mode3(fu), ifft_mode3(ftheta), ifft_mode3(fv), !full};
}

} // namespace

TsvdFactors tsvd(const DenseTensor3& t) { return assemble(t, std::min(t.rows(), t.cols()), true); }

TsvdFactors tsvd(const DenseTensor3& t, Index r)
{
  require_rank(t, r);
  return assemble(t, r, false);
}

Eigen::VectorXd eigentube_norms(const DenseTensor3& t)
{
  FreqTensor3 const f = fft_mode3(t);
  Index const k = t.depth();
  Eigen::VectorXd sq = Eigen::VectorXd::Zero(std::min(t.rows(), t.cols()));
  for (Index kappa = 0; kappa < k; ++kappa) {
    // Slices past k/2 mirror earlier ones and share their singular values.
    Index const source = kappa < detail::independent_slices(k) ? kappa : k - kappa;
    sq += detail::slice_singular_values(f.slice(source), detail::self_conjugate(source, k)).cwiseAbs2();
  }
  return (sq / static_cast<double>(k)).cwiseSqrt();
}

Index tubal_rank(const DenseTensor3& t, double tol)
{
  if (!(tol > 0.0 && tol < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "tubal_rank tolerance must lie in (0, 1)");
  }
  Eigen::VectorXd const norms = eigentube_norms(t);
  double const top = norms.size() > 0 ? norms.maxCoeff() : 0.0;
  if (!(top > 0.0)) {
    return 0;
  }
  return static_cast<Index>((norms.array() > tol * top).count());
}

DenseTensor3 truncate_rank(const DenseTensor3& t, Index r)
{
  require_rank(t, r);
  Index const k = t.depth();
  auto const svds = slice_svds(fft_mode3(t), false);
  FreqTensor3 out(t.dims());
  for (Index kappa = 0; kappa < detail::independent_slices(k); ++kappa) {
    auto const& svd = svds[static_cast<std::size_t>(kappa)];
    Eigen::VectorXcd const s = svd.s.head(r).cast<Complex>();
    out.slice(kappa).noalias() = svd.u.leftCols(r) * s.asDiagonal() * svd.v.leftCols(r).adjoint();
  }
  detail::mirror_conjugate(out);
  return ifft_mode3(out);
}

DenseTensor3 top_r_eigenslices(const DenseTensor3& t, Index r) { return tsvd(t, r).u; }

} // namespace tubal
