#include "frequency.hpp"

#include <cmath>

namespace tubal::detail {

void mirror_conjugate(FreqTensor3& f)
{
  Index const k = f.depth();
  for (Index kappa = independent_slices(k); kappa < k; ++kappa) {
    f.slice(kappa) = f.slice(k - kappa).conjugate();
  }
}

void set_slice(FreqTensor3& f, Index kappa, const MatrixXc& value) { f.slice(kappa) = value; }

namespace {

void fix_phases(MatrixXc& u, MatrixXc& v, Index count)
{
  for (Index s = 0; s < count; ++s) {
    Index best = 0;
    double best_mag = -1.0;
    for (Index i = 0; i < u.rows(); ++i) {
      double const mag = std::abs(u(i, s));
      if (mag > best_mag * (1.0 + 1e-12)) {
        best_mag = mag;
        best = i;
      }
    }
    if (best_mag <= 0.0) {
      continue;
    }
    Complex const phase = std::conj(u(best, s)) / best_mag;
    u.col(s) *= phase;
    if (s < v.cols()) {
      v.col(s) *= phase;
    }
  }
}

} // namespace

SliceSvd slice_svd(const MatrixXc& a, bool real_slice, bool full)
{
  unsigned const options = full ? (Eigen::ComputeFullU | Eigen::ComputeFullV) : (Eigen::ComputeThinU | Eigen::ComputeThinV);
  SliceSvd out;
  if (real_slice) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(a.real(), options);
    out.u = svd.matrixU().cast<Complex>();
    out.v = svd.matrixV().cast<Complex>();
    out.s = svd.singularValues();
  } else {
    Eigen::BDCSVD<MatrixXc> svd(a, options);
    out.u = svd.matrixU();
    out.v = svd.matrixV();
    out.s = svd.singularValues();
  }
  fix_phases(out.u, out.v, out.u.cols());
  return out;
}

Eigen::VectorXd slice_singular_values(const MatrixXc& a, bool real_slice)
{
  if (real_slice) {
    return Eigen::BDCSVD<Eigen::MatrixXd>(a.real()).singularValues();
  }
  return Eigen::BDCSVD<MatrixXc>(a).singularValues();
}

SliceQr slice_qr(const MatrixXc& a, bool real_slice)
{
  Index const rows = a.rows();
  Index const cols = a.cols();
  SliceQr out;
  if (real_slice) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a.real());
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
    Eigen::MatrixXd r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    out.q = q.cast<Complex>();
    out.r = r.cast<Complex>();
  } else {
    Eigen::HouseholderQR<MatrixXc> qr(a);
    out.q = qr.householderQ() * MatrixXc::Identity(rows, cols);
    out.r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  }
  for (Index s = 0; s < cols; ++s) {
    double const mag = std::abs(out.r(s, s));
    if (mag == 0.0) {
      continue;
    }
    Complex const phase = out.r(s, s) / mag;
    out.q.col(s) *= phase;
    out.r.row(s) *= std::conj(phase);
  }
  return out;
}

} // namespace tubal::detail
