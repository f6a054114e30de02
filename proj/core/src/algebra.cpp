#include "tubal/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>

#include <fftw3.h>

#include "frequency.hpp"

namespace tubal {

namespace {

// FFTW's planner is not re-entrant; execution on a private plan is.
std::mutex& planner_mutex()
{
  static std::mutex m;
  return m;
}

/// Transforms every tube of a (slice_size x k) block in place. Tubes are
/// strided by slice_size in the tensor layout.
void transform_tubes(Complex* values, Index slice_size, Index k, int sign)
{
  if (k == 1) {
    return;
  }
  std::size_t const count = static_cast<std::size_t>(slice_size * k);
  fftw_complex* buffer = fftw_alloc_complex(count);
  fftw_plan plan = nullptr;
  {
    std::lock_guard lock(planner_mutex());
    int const n = static_cast<int>(k);
    int const stride = static_cast<int>(slice_size);
    plan = fftw_plan_many_dft(1, &n, static_cast<int>(slice_size), buffer, nullptr, stride, 1, buffer, nullptr, stride, 1, sign,
                              FFTW_ESTIMATE);
  }
  std::memcpy(buffer, values, count * sizeof(fftw_complex));
  fftw_execute(plan);
  std::memcpy(static_cast<void*>(values), buffer, count * sizeof(fftw_complex));
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buffer);
}

void require(bool ok, const std::string& what)
{
  if (!ok) {
    throw Error(ErrorCode::DimensionMismatch, what);
  }
}

} // namespace

FreqTensor3 fft_mode3(const DenseTensor3& t)
{
  FreqTensor3 f(t.dims());
  auto src = t.values();
  auto dst = f.values();
  std::transform(src.begin(), src.end(), dst.begin(), [](double v) { return Complex{v, 0.0}; });
  transform_tubes(f.data(), t.dims().slice_size(), t.depth(), FFTW_FORWARD);
  return f;
}

FreqTensor3 ifft_mode3_complex(const FreqTensor3& f)
{
  FreqTensor3 out = f;
  transform_tubes(out.data(), f.dims().slice_size(), f.depth(), FFTW_BACKWARD);
  out *= Complex{1.0 / static_cast<double>(f.depth()), 0.0};
  return out;
}

double imaginary_residual(const FreqTensor3& time_domain)
{
  double imag = 0.0;
  double total = 0.0;
  for (Complex const& v : time_domain.values()) {
    imag += v.imag() * v.imag();
    total += std::norm(v);
  }
  return total > 0.0 ? std::sqrt(imag / total) : 0.0;
}

DenseTensor3 ifft_mode3(const FreqTensor3& f, double max_imaginary)
{
  FreqTensor3 const c = ifft_mode3_complex(f);
  double const residual = imaginary_residual(c);
  if (residual > max_imaginary) {
    throw Error(ErrorCode::ImaginaryResidualTooLarge,
                "relative imaginary residual " + std::to_string(residual) + " is not the image of a real tensor");
  }
  DenseTensor3 out(f.dims());
  auto src = c.values();
  auto dst = out.values();
  std::transform(src.begin(), src.end(), dst.begin(), [](Complex const& v) { return v.real(); });
  return out;
}

DenseTensor3 tprod(const DenseTensor3& a, const DenseTensor3& b)
{
  require(a.cols() == b.rows() && a.depth() == b.depth(),
          "tprod of " + to_string(a.dims()) + " and " + to_string(b.dims()));
  FreqTensor3 const fa = fft_mode3(a);
  FreqTensor3 const fb = fft_mode3(b);
  FreqTensor3 fc(a.rows(), b.cols(), a.depth());
  Index const k = a.depth();
  for (Index kappa = 0; kappa < detail::independent_slices(k); ++kappa) {
    fc.slice(kappa).noalias() = fa.slice(kappa) * fb.slice(kappa);
  }
  detail::mirror_conjugate(fc);
  return ifft_mode3(fc);
}

DenseTensor3 ttranspose(const DenseTensor3& t)
{
  Index const k = t.depth();
  DenseTensor3 out(t.cols(), t.rows(), k);
  for (Index kappa = 0; kappa < k; ++kappa) {
    Index const src = kappa == 0 ? 0 : k - kappa;
    out.slice(kappa) = t.slice(src).transpose();
  }
  return out;
}

DenseTensor3 tube_transpose(const DenseTensor3& t)
{
  DenseTensor3 out(t.cols(), t.rows(), t.depth());
  for (Index kappa = 0; kappa < t.depth(); ++kappa) {
    out.slice(kappa) = t.slice(kappa).transpose();
  }
  return out;
}

DenseTensor3 identity_tensor(Index n, Index k)
{
  DenseTensor3 out(n, n, k);
  out.slice(0).setIdentity();
  return out;
}

DenseTensor3 tinv(const DenseTensor3& t)
{
  require(t.rows() == t.cols(), "tinv of non-square " + to_string(t.dims()));
  FreqTensor3 const f = fft_mode3(t);
  FreqTensor3 inv(t.dims());
  Index const k = t.depth();
  for (Index kappa = 0; kappa < detail::independent_slices(k); ++kappa) {
    auto const svd = detail::slice_svd(f.slice(kappa), detail::self_conjugate(kappa, k), false);
    double const largest = svd.s.size() > 0 ? svd.s[0] : 0.0;
    double const smallest = svd.s.size() > 0 ? svd.s[svd.s.size() - 1] : 0.0;
    if (!(smallest > 0.0) || largest / smallest > 1e12) {
      throw Error(ErrorCode::SingularFrequencySlice, "frequency slice " + std::to_string(kappa) + " is singular", kappa);
    }
    Eigen::VectorXcd const inv_s = svd.s.cwiseInverse().cast<Complex>();
    inv.slice(kappa).noalias() = svd.v * inv_s.asDiagonal() * svd.u.adjoint();
  }
  detail::mirror_conjugate(inv);
  return ifft_mode3(inv);
}

DenseTensor3 elementwise_prod(const DenseTensor3& a, const DenseTensor3& b)
{
  require(a.dims() == b.dims(), "elementwise_prod of " + to_string(a.dims()) + " and " + to_string(b.dims()));
  DenseTensor3 out(a.dims());
  for (Index p = 0; p < a.size(); ++p) {
    out.data()[p] = a.data()[p] * b.data()[p];
  }
  return out;
}

DenseTensor3 tubewise_conv(const DenseTensor3& a, const DenseTensor3& b)
{
  require(a.dims() == b.dims(), "tubewise_conv of " + to_string(a.dims()) + " and " + to_string(b.dims()));
  Index const k = a.depth();
  DenseTensor3 out(a.dims());
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      for (Index kappa = 0; kappa < k; ++kappa) {
        double acc = 0.0;
        for (Index s = 0; s < k; ++s) {
          acc += a(i, j, s) * b(i, j, (kappa - s + k) % k);
        }
        out(i, j, kappa) = acc;
      }
    }
  }
  return out;
}

DenseTensor3 slicewise_prod(const DenseTensor3& a, const DenseTensor3& b)
{
  require(a.cols() == b.rows() && a.depth() == b.depth(),
          "slicewise_prod of " + to_string(a.dims()) + " and " + to_string(b.dims()));
  DenseTensor3 out(a.rows(), b.cols(), a.depth());
  for (Index kappa = 0; kappa < a.depth(); ++kappa) {
    out.slice(kappa).noalias() = a.slice(kappa) * b.slice(kappa);
  }
  return out;
}

CircularMatrix circ_expand(const DenseTensor3& t)
{
  Index const k = t.depth();
  CircularMatrix out = CircularMatrix::Zero(t.rows() * k, t.cols() * k);
  for (Index j = 0; j < t.cols(); ++j) {
    for (Index i = 0; i < t.rows(); ++i) {
      for (Index col = 0; col < k; ++col) {
        for (Index row = 0; row < k; ++row) {
          out(i * k + row, j * k + col) = t(i, j, (row - col + k) % k);
        }
      }
    }
  }
  return out;
}

double frobenius_norm(const DenseTensor3& t)
{
  double acc = 0.0;
  for (double v : t.values()) {
    acc += v * v;
  }
  return std::sqrt(acc);
}

double spectral_norm(const DenseTensor3& t)
{
  FreqTensor3 const f = fft_mode3(t);
  double best = 0.0;
  for (Index kappa = 0; kappa < detail::independent_slices(t.depth()); ++kappa) {
    auto const s = detail::slice_singular_values(f.slice(kappa), detail::self_conjugate(kappa, t.depth()));
    if (s.size() > 0) {
      best = std::max(best, s[0]);
    }
  }
  return best;
}

double infinity_norm(const DenseTensor3& t)
{
  double best = 0.0;
  for (double v : t.values()) {
    best = std::max(best, std::abs(v));
  }
  return best;
}

Eigen::VectorXd col_2star_norms(const DenseTensor3& t)
{
  Eigen::VectorXd sq = Eigen::VectorXd::Zero(t.cols());
  for (Index kappa = 0; kappa < t.depth(); ++kappa) {
    sq += t.slice(kappa).colwise().squaredNorm().transpose();
  }
  return sq.cwiseSqrt();
}

double inf_2star_norm(const DenseTensor3& t) { return t.cols() > 0 ? col_2star_norms(t).maxCoeff() : 0.0; }

double orthonormality_error(const DenseTensor3& u)
{
  // Parseval: ||A||_F^2 = (1/k) sum over frequency slices of ||A~||_F^2.
  FreqTensor3 const f = fft_mode3(u);
  Index const k = u.depth();
  Index const r = u.cols();
  double acc = 0.0;
  for (Index kappa = 0; kappa < k; ++kappa) {
    Eigen::MatrixXcd gram = f.slice(kappa).adjoint() * f.slice(kappa);
    gram -= Eigen::MatrixXcd::Identity(r, r);
    acc += gram.squaredNorm();
  }
  return std::sqrt(acc / static_cast<double>(k));
}

double orthonormality_tolerance(const DenseTensor3& u)
{
  return 1e-8 * std::sqrt(static_cast<double>(u.cols() * u.depth()));
}

double coherence(const DenseTensor3& u)
{
  if (orthonormality_error(u) > orthonormality_tolerance(u)) {
    throw Error(ErrorCode::NotOrthonormal, "coherence requires an orthonormal tensor, got " + to_string(u.dims()));
  }
  // ||U^T * e_i||_F equals the Frobenius norm of horizontal slice i.
  double best = 0.0;
  for (Index i = 0; i < u.rows(); ++i) {
    double acc = 0.0;
    for (Index kappa = 0; kappa < u.depth(); ++kappa) {
      acc += u.slice(kappa).row(i).squaredNorm();
    }
    best = std::max(best, acc);
  }
  return static_cast<double>(u.rows()) / static_cast<double>(u.cols()) * best;
}

DenseTensor3 column_basis(Index i, Index m, Index k)
{
  if (i < 0 || i >= m) {
    throw Error(ErrorCode::IndexOutOfRange, "column basis index " + std::to_string(i) + " outside [0, " + std::to_string(m) + ")");
  }
  DenseTensor3 out(m, 1, k);
  out(i, 0, 0) = 1.0;
  return out;
}

TubeScalar tubal_basis(Index j, Index k)
{
  if (j < 0 || j >= k) {
    throw Error(ErrorCode::IndexOutOfRange, "tubal basis index " + std::to_string(j) + " outside [0, " + std::to_string(k) + ")");
  }
  TubeScalar out = TubeScalar::Zero(k);
  out[j] = 1.0;
  return out;
}

} // namespace tubal
