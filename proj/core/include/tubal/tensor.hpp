#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tubal/error.hpp"

namespace tubal {

using Index = std::ptrdiff_t;
using Complex = std::complex<double>;

/// Shape of a third-order tensor: m rows, n columns, k frontal slices.
struct Dims {
  Index m = 0;
  Index n = 0;
  Index k = 0;

  Index count() const noexcept { return m * n * k; }
  Index slice_size() const noexcept { return m * n; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

inline std::string to_string(const Dims& d)
{
  return std::to_string(d.m) + "x" + std::to_string(d.n) + "x" + std::to_string(d.k);
}

/// Dense m x n x k array stored with i fastest, then j, then kappa. Each
/// frontal slice is therefore a contiguous column-major m x n matrix and can
/// be viewed in place through `slice()`.
template <typename Scalar>
class Tensor3 {
public:
  using value_type = Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using SliceMap = Eigen::Map<Matrix>;
  using ConstSliceMap = Eigen::Map<const Matrix>;

  Tensor3() = default;

  Tensor3(Index m, Index n, Index k)
    : Tensor3(Dims{m, n, k})
  {
  }

  explicit Tensor3(Dims dims)
    : dims_{dims}
  {
    if (dims.m < 1 || dims.n < 1 || dims.k < 1) {
      throw Error(ErrorCode::InvalidArgument, "tensor dimensions must be positive, got " + to_string(dims));
    }
    values_.assign(static_cast<std::size_t>(dims.count()), Scalar{0});
  }

  Tensor3(Dims dims, std::vector<Scalar> values)
    : dims_{dims}
    , values_{std::move(values)}
  {
    if (dims.m < 1 || dims.n < 1 || dims.k < 1) {
      throw Error(ErrorCode::InvalidArgument, "tensor dimensions must be positive, got " + to_string(dims));
    }
    if (static_cast<Index>(values_.size()) != dims.count()) {
      throw Error(ErrorCode::DimensionMismatch, "value count does not match " + to_string(dims));
    }
  }

  const Dims& dims() const noexcept { return dims_; }
  Index rows() const noexcept { return dims_.m; }
  Index cols() const noexcept { return dims_.n; }
  Index depth() const noexcept { return dims_.k; }
  Index size() const noexcept { return dims_.count(); }
  bool empty() const noexcept { return values_.empty(); }

  Index linear_index(Index i, Index j, Index kappa) const noexcept { return i + dims_.m * (j + dims_.n * kappa); }

  Scalar& operator()(Index i, Index j, Index kappa) noexcept { return values_[static_cast<std::size_t>(linear_index(i, j, kappa))]; }
  const Scalar& operator()(Index i, Index j, Index kappa) const noexcept
  {
    return values_[static_cast<std::size_t>(linear_index(i, j, kappa))];
  }

  std::span<Scalar> values() noexcept { return values_; }
  std::span<const Scalar> values() const noexcept { return values_; }
  Scalar* data() noexcept { return values_.data(); }
  const Scalar* data() const noexcept { return values_.data(); }

  SliceMap slice(Index kappa) noexcept { return SliceMap(values_.data() + kappa * dims_.slice_size(), dims_.m, dims_.n); }
  ConstSliceMap slice(Index kappa) const noexcept
  {
    return ConstSliceMap(values_.data() + kappa * dims_.slice_size(), dims_.m, dims_.n);
  }

  /// Copy of the tube (i, j, :).
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> tube(Index i, Index j) const
  {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(dims_.k);
    for (Index kappa = 0; kappa < dims_.k; ++kappa) {
      out[kappa] = (*this)(i, j, kappa);
    }
    return out;
  }

  void set_tube(Index i, Index j, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& tube)
  {
    for (Index kappa = 0; kappa < dims_.k; ++kappa) {
      (*this)(i, j, kappa) = tube[kappa];
    }
  }

  void set_zero() { std::fill(values_.begin(), values_.end(), Scalar{0}); }

  Tensor3& operator+=(const Tensor3& other)
  {
    require_same_dims(other);
    for (std::size_t p = 0; p < values_.size(); ++p) {
      values_[p] += other.values_[p];
    }
    return *this;
  }

  Tensor3& operator-=(const Tensor3& other)
  {
    require_same_dims(other);
    for (std::size_t p = 0; p < values_.size(); ++p) {
      values_[p] -= other.values_[p];
    }
    return *this;
  }

  Tensor3& operator*=(Scalar s)
  {
    for (auto& v : values_) {
      v *= s;
    }
    return *this;
  }

  friend Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
  friend Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
  friend Tensor3 operator*(Tensor3 a, Scalar s) { return a *= s; }
  friend Tensor3 operator*(Scalar s, Tensor3 a) { return a *= s; }

  friend bool operator==(const Tensor3& a, const Tensor3& b) { return a.dims_ == b.dims_ && a.values_ == b.values_; }

private:
  void require_same_dims(const Tensor3& other) const
  {
    if (!(dims_ == other.dims_)) {
      throw Error(ErrorCode::DimensionMismatch, to_string(dims_) + " vs " + to_string(other.dims_));
    }
  }

  Dims dims_{};
  std::vector<Scalar> values_;
};

/// Real tensor: the data container for observations, factors and estimates.
using DenseTensor3 = Tensor3<double>;
/// Complex tensor holding the mode-3 DFT of a real tensor.
using FreqTensor3 = Tensor3<Complex>;
/// One length-k tube.
using TubeScalar = Eigen::VectorXd;
/// The (mk) x (nk) block-circulant image of a tensor.
using CircularMatrix = Eigen::MatrixXd;

/// True when no entry is NaN or infinite.
inline bool all_finite(const DenseTensor3& t)
{
  return std::all_of(t.values().begin(), t.values().end(), [](double v) { return std::isfinite(v); });
}

/// 1 x 1 x k tensor holding `tube`.
inline DenseTensor3 tube_tensor(const TubeScalar& tube)
{
  DenseTensor3 out(1, 1, tube.size());
  out.set_tube(0, 0, tube);
  return out;
}

} // namespace tubal
