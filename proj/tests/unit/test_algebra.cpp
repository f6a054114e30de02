#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

using namespace tubal;

namespace {

std::mt19937_64 rng(std::uint64_t s) { return std::mt19937_64(s); }

} // namespace

TEST(FftMode3, LengthOneIsIdentity)
{
  auto e = rng(1);
  DenseTensor3 const t = oracle::random_tensor({3, 2, 1}, e);
  FreqTensor3 const f = fft_mode3(t);
  for (Index p = 0; p < t.size(); ++p) {
    EXPECT_EQ(f.data()[p], Complex(t.data()[p], 0.0));
  }
}

TEST(FftMode3, ImpulseBecomesAllOnes)
{
  DenseTensor3 t(1, 1, 4);
  t(0, 0, 0) = 1.0;
  FreqTensor3 const f = fft_mode3(t);
  for (Index kappa = 0; kappa < 4; ++kappa) {
    EXPECT_NEAR(std::abs(f(0, 0, kappa) - Complex(1.0, 0.0)), 0.0, 1e-15);
  }
}

TEST(FftMode3, MatchesNaiveDft)
{
  auto e = rng(2);
  DenseTensor3 const t = oracle::random_tensor({3, 2, 5}, e);
  FreqTensor3 const f = fft_mode3(t);
  FreqTensor3 const g = oracle::naive_dft(t);
  for (Index p = 0; p < t.size(); ++p) {
    EXPECT_NEAR(std::abs(f.data()[p] - g.data()[p]), 0.0, 1e-12);
  }
}

TEST(FftMode3, ConjugateSymmetry)
{
  auto e = rng(3);
  DenseTensor3 const t = oracle::random_tensor({2, 3, 6}, e);
  FreqTensor3 const f = fft_mode3(t);
  for (Index kappa = 1; kappa < 6; ++kappa) {
    for (Index j = 0; j < 3; ++j) {
      for (Index i = 0; i < 2; ++i) {
        EXPECT_NEAR(std::abs(f(i, j, kappa) - std::conj(f(i, j, 6 - kappa))), 0.0, 1e-12);
      }
    }
  }
}

TEST(IfftMode3, RoundTrip)
{
  auto e = rng(4);
  DenseTensor3 const t = oracle::random_tensor({4, 4, 8}, e);
  EXPECT_LE(oracle::rel_error(ifft_mode3(fft_mode3(t)), t), 1e-12);
  EXPECT_LE(imaginary_residual(ifft_mode3_complex(fft_mode3(t))), 1e-9);
}

TEST(IfftMode3, AllOnesBecomesImpulse)
{
  FreqTensor3 f(1, 1, 4);
  for (Index kappa = 0; kappa < 4; ++kappa) {
    f(0, 0, kappa) = 1.0;
  }
  DenseTensor3 const t = ifft_mode3(f);
  EXPECT_NEAR(t(0, 0, 0), 1.0, 1e-15);
  for (Index kappa = 1; kappa < 4; ++kappa) {
    EXPECT_NEAR(t(0, 0, kappa), 0.0, 1e-15);
  }
}

TEST(IfftMode3, RejectsNonRealImage)
{
  FreqTensor3 f(1, 1, 4);
  f(0, 0, 1) = Complex(0.0, 1.0);
  try {
    (void)ifft_mode3(f);
    FAIL() << "expected ImaginaryResidualTooLarge";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::ImaginaryResidualTooLarge);
  }
}

TEST(Tprod, IdentityIsNeutral)
{
  auto e = rng(5);
  DenseTensor3 const a = oracle::random_tensor({4, 3, 5}, e);
  EXPECT_LE(oracle::rel_error(tprod(identity_tensor(4, 5), a), a), 1e-12);
  EXPECT_LE(oracle::rel_error(tprod(a, identity_tensor(3, 5)), a), 1e-12);
}

TEST(Tprod, HandCircularConvolution)
{
  DenseTensor3 a(1, 1, 2);
  DenseTensor3 b(1, 1, 2);
  a(0, 0, 0) = 2.0;
  a(0, 0, 1) = 3.0;
  b(0, 0, 0) = 5.0;
  b(0, 0, 1) = 7.0;
  DenseTensor3 const c = tprod(a, b);
  EXPECT_NEAR(c(0, 0, 0), 2.0 * 5.0 + 3.0 * 7.0, 1e-12);
  EXPECT_NEAR(c(0, 0, 1), 2.0 * 7.0 + 3.0 * 5.0, 1e-12);
}

TEST(Tprod, MatchesCircularMatrixProduct)
{
  auto e = rng(6);
  DenseTensor3 const a = oracle::random_tensor({4, 3, 5}, e);
  DenseTensor3 const b = oracle::random_tensor({3, 2, 5}, e);
  DenseTensor3 const folded = oracle::fold_first_block_column(oracle::circ(a) * oracle::circ(b), 4, 2, 5);
  EXPECT_LE(oracle::rel_error(tprod(a, b), folded), 1e-10);
  EXPECT_LE(oracle::rel_error(tprod(a, b), oracle::naive_tprod(a, b)), 1e-12);
}

TEST(Tprod, DimensionMismatch)
{
  DenseTensor3 const a(2, 3, 2);
  DenseTensor3 const b(2, 3, 2);
  EXPECT_THROW((void)tprod(a, b), Error);
  EXPECT_THROW((void)tprod(a, DenseTensor3(3, 2, 3)), Error);
}

TEST(Ttranspose, KOneIsMatrixTranspose)
{
  auto e = rng(7);
  DenseTensor3 const t = oracle::random_tensor({3, 5, 1}, e);
  DenseTensor3 const tt = ttranspose(t);
  EXPECT_TRUE(tt.slice(0) == t.slice(0).transpose());
}

TEST(Ttranspose, InvolutionAndReversal)
{
  auto e = rng(8);
  DenseTensor3 const t = oracle::random_tensor({3, 2, 4}, e);
  EXPECT_EQ(ttranspose(ttranspose(t)), t);
  DenseTensor3 const tt = ttranspose(t);
  EXPECT_TRUE(tt.slice(1) == t.slice(3).transpose());
  EXPECT_TRUE(tt.slice(2) == t.slice(2).transpose());
}

TEST(Ttranspose, ReversesProducts)
{
  auto e = rng(9);
  DenseTensor3 const a = oracle::random_tensor({3, 3, 4}, e);
  DenseTensor3 const b = oracle::random_tensor({3, 3, 4}, e);
  EXPECT_LE(oracle::rel_error(ttranspose(tprod(a, b)), tprod(ttranspose(b), ttranspose(a))), 1e-10);
}

TEST(TubeTranspose, KOneInvolutionAndDifference)
{
  auto e = rng(10);
  DenseTensor3 const m = oracle::random_tensor({3, 4, 1}, e);
  EXPECT_EQ(tube_transpose(m), ttranspose(m));
  DenseTensor3 const t = oracle::random_tensor({3, 4, 3}, e);
  EXPECT_EQ(tube_transpose(tube_transpose(t)), t);
  EXPECT_FALSE(tube_transpose(t) == ttranspose(t));
  EXPECT_EQ(tube_transpose(t)(2, 1, 2), t(1, 2, 2));
}

TEST(IdentityTensor, Structure)
{
  DenseTensor3 const one = identity_tensor(1, 1);
  EXPECT_EQ(one(0, 0, 0), 1.0);
  FreqTensor3 const f = fft_mode3(identity_tensor(3, 4));
  for (Index kappa = 0; kappa < 4; ++kappa) {
    EXPECT_LE((f.slice(kappa) - Eigen::MatrixXcd::Identity(3, 3)).norm(), 1e-15);
  }
}

TEST(Tinv, IdentityAndRoundTrip)
{
  EXPECT_LE(oracle::rel_error(tinv(identity_tensor(3, 4)), identity_tensor(3, 4)), 1e-14);
  auto e = rng(11);
  // Orthonormal frequency slices are perfectly conditioned.
  DenseTensor3 const q = oracle::random_orthonormal(4, 4, 3, e);
  DenseTensor3 const t = q + identity_tensor(4, 3) * 0.5;
  EXPECT_LE(frobenius_norm(tprod(tinv(t), t) - identity_tensor(4, 3)), 1e-8);
  EXPECT_LE(frobenius_norm(tprod(tinv(q), q) - identity_tensor(4, 3)), 1e-8);
}

TEST(Tinv, SingularSliceReportsIndex)
{
  // Tube [1, 1]: DFT is [2, 0], so frequency slice 1 vanishes.
  DenseTensor3 t(1, 1, 2);
  t(0, 0, 0) = 1.0;
  t(0, 0, 1) = 1.0;
  try {
    (void)tinv(t);
    FAIL() << "expected SingularFrequencySlice";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::SingularFrequencySlice);
    ASSERT_TRUE(err.detail().has_value());
    EXPECT_EQ(*err.detail(), 1);
  }
}

TEST(Products, ElementwiseAndTubewise)
{
  auto e = rng(12);
  DenseTensor3 const a = oracle::random_tensor({3, 3, 4}, e);
  DenseTensor3 const b = oracle::random_tensor({3, 3, 4}, e);
  DenseTensor3 ones(3, 3, 4);
  for (double& v : ones.values()) {
    v = 1.0;
  }
  EXPECT_EQ(elementwise_prod(a, ones), a);

  DenseTensor3 impulse(3, 3, 4);
  impulse.slice(0).setOnes();
  EXPECT_LE(oracle::rel_error(tubewise_conv(a, impulse), a), 1e-15);

  FreqTensor3 const lhs = fft_mode3(tubewise_conv(a, b));
  FreqTensor3 const fa = fft_mode3(a);
  FreqTensor3 const fb = fft_mode3(b);
  for (Index p = 0; p < a.size(); ++p) {
    EXPECT_NEAR(std::abs(lhs.data()[p] - fa.data()[p] * fb.data()[p]), 0.0, 1e-10);
  }
  EXPECT_THROW((void)elementwise_prod(a, DenseTensor3(3, 3, 3)), Error);
  EXPECT_THROW((void)tubewise_conv(a, DenseTensor3(3, 2, 4)), Error);
}

TEST(Products, Slicewise)
{
  auto e = rng(13);
  DenseTensor3 const a = oracle::random_tensor({2, 3, 3}, e);
  DenseTensor3 const b = oracle::random_tensor({3, 4, 3}, e);
  DenseTensor3 const c = slicewise_prod(a, b);
  for (Index kappa = 0; kappa < 3; ++kappa) {
    EXPECT_LE((c.slice(kappa) - a.slice(kappa) * b.slice(kappa)).norm(), 1e-14);
  }
  EXPECT_THROW((void)slicewise_prod(a, a), Error);
}

TEST(CircExpand, SmallLayoutAndIdentity)
{
  DenseTensor3 t(1, 1, 2);
  t(0, 0, 0) = 2.0;
  t(0, 0, 1) = 3.0;
  Eigen::Matrix2d expected;
  expected << 2.0, 3.0, 3.0, 2.0;
  EXPECT_EQ(circ_expand(t), Eigen::MatrixXd(expected));
  EXPECT_EQ(circ_expand(identity_tensor(3, 4)), Eigen::MatrixXd::Identity(12, 12));
}

TEST(CircExpand, MatchesDefinitionAndNormIdentity)
{
  auto e = rng(14);
  DenseTensor3 const t = oracle::random_tensor({3, 4, 5}, e);
  EXPECT_EQ(circ_expand(t), oracle::circ(t));
  EXPECT_NEAR(frobenius_norm(t), circ_expand(t).norm() / std::sqrt(5.0), 1e-12);
}

TEST(Norms, ZeroTensor)
{
  DenseTensor3 const z(3, 2, 4);
  EXPECT_EQ(frobenius_norm(z), 0.0);
  EXPECT_EQ(spectral_norm(z), 0.0);
  EXPECT_EQ(infinity_norm(z), 0.0);
  EXPECT_EQ(inf_2star_norm(z), 0.0);
  EXPECT_EQ(col_2star_norms(z), Eigen::VectorXd::Zero(2));
}

TEST(Norms, Identity)
{
  DenseTensor3 const id = identity_tensor(4, 3);
  EXPECT_NEAR(spectral_norm(id), 1.0, 1e-14);
  EXPECT_NEAR(frobenius_norm(id), 2.0, 1e-14);
  EXPECT_NEAR(infinity_norm(id), 1.0, 0.0);
}

TEST(Norms, SpectralMatchesCircularMatrix)
{
  auto e = rng(15);
  DenseTensor3 const t = oracle::random_tensor({5, 4, 3}, e);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(oracle::circ(t));
  EXPECT_NEAR(spectral_norm(t), svd.singularValues()[0], 1e-9);
}

TEST(Norms, LateralSlices)
{
  auto e = rng(16);
  DenseTensor3 const t = oracle::random_tensor({3, 4, 2}, e);
  Eigen::VectorXd const norms = col_2star_norms(t);
  for (Index j = 0; j < 4; ++j) {
    double acc = 0.0;
    for (Index i = 0; i < 3; ++i) {
      for (Index kappa = 0; kappa < 2; ++kappa) {
        acc += t(i, j, kappa) * t(i, j, kappa);
      }
    }
    EXPECT_NEAR(norms[j], std::sqrt(acc), 1e-14);
  }
  EXPECT_NEAR(inf_2star_norm(t), norms.maxCoeff(), 0.0);
}

namespace {

// Horizontal slice norm via the definition ||U^T * e_i||_F^2.
double literal_coherence(const DenseTensor3& u)
{
  double best = 0.0;
  for (Index i = 0; i < u.rows(); ++i) {
    double const norm = frobenius_norm(tprod(ttranspose(u), column_basis(i, u.rows(), u.depth())));
    best = std::max(best, norm * norm);
  }
  return static_cast<double>(u.rows()) / static_cast<double>(u.cols()) * best;
}

} // namespace

TEST(Coherence, IdentitySlicesAreMaximal)
{
  DenseTensor3 const id = identity_tensor(6, 3);
  DenseTensor3 u(6, 2, 3);
  for (Index kappa = 0; kappa < 3; ++kappa) {
    u.slice(kappa) = id.slice(kappa).leftCols(2);
  }
  EXPECT_NEAR(coherence(u), 3.0, 1e-12);
}

TEST(Coherence, FlatColumnIsMinimal)
{
  // k = 1: every entry 1/sqrt(n).
  DenseTensor3 flat(5, 1, 1);
  for (double& v : flat.values()) {
    v = 1.0 / std::sqrt(5.0);
  }
  EXPECT_NEAR(coherence(flat), 1.0, 1e-12);

  // k = 4: every tube w / sqrt(n) with w = [1, 1, 1, -1] / 2, whose DFT has
  // unit modulus, so the column is orthonormal.
  DenseTensor3 spread(5, 1, 4);
  double const w[4] = {0.5, 0.5, 0.5, -0.5};
  for (Index i = 0; i < 5; ++i) {
    for (Index kappa = 0; kappa < 4; ++kappa) {
      spread(i, 0, kappa) = w[kappa] / std::sqrt(5.0);
    }
  }
  EXPECT_LE(orthonormality_error(spread), 1e-12);
  EXPECT_NEAR(coherence(spread), 1.0, 1e-12);
}

TEST(Coherence, RandomOrthonormalWithinBounds)
{
  auto e = rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    DenseTensor3 const u = oracle::random_orthonormal(8, 3, 4, e);
    double const mu = coherence(u);
    EXPECT_GE(mu, 1.0 - 1e-9);
    EXPECT_LE(mu, 8.0 / 3.0 + 1e-9);
    EXPECT_NEAR(mu, literal_coherence(u), 1e-10);
  }
}

TEST(Coherence, RejectsNonOrthonormal)
{
  auto e = rng(18);
  DenseTensor3 const t = oracle::random_tensor({5, 2, 3}, e);
  try {
    (void)coherence(t);
    FAIL() << "expected NotOrthonormal";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::NotOrthonormal);
  }
}

TEST(Bases, ColumnAndTubal)
{
  DenseTensor3 const e1 = column_basis(0, 2, 2);
  EXPECT_EQ(e1(0, 0, 0), 1.0);
  EXPECT_EQ(frobenius_norm(e1), 1.0);
  TubeScalar const t = tubal_basis(2, 4);
  EXPECT_EQ(t, (TubeScalar(4) << 0, 0, 1, 0).finished());
  EXPECT_THROW((void)column_basis(2, 2, 2), Error);
  EXPECT_THROW((void)tubal_basis(-1, 3), Error);
}

TEST(Bases, DecompositionReconstructs)
{
  auto e = rng(19);
  DenseTensor3 const x = oracle::random_tensor({2, 2, 2}, e);
  DenseTensor3 sum(2, 2, 2);
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) {
      for (Index kappa = 0; kappa < 2; ++kappa) {
        DenseTensor3 const unit = tprod(tprod(column_basis(i, 2, 2), tube_tensor(tubal_basis(kappa, 2))),
                                        ttranspose(column_basis(j, 2, 2)));
        sum += unit * x(i, j, kappa);
      }
    }
  }
  EXPECT_LE(oracle::rel_error(sum, x), 1e-14);
}

TEST(Bases, HorizontalSliceExtraction)
{
  auto e = rng(20);
  DenseTensor3 const n = oracle::random_tensor({4, 3, 5}, e);
  for (Index i = 0; i < 4; ++i) {
    DenseTensor3 const row = tprod(ttranspose(column_basis(i, 4, 5)), n);
    double acc = 0.0;
    for (Index j = 0; j < 3; ++j) {
      for (Index kappa = 0; kappa < 5; ++kappa) {
        acc += n(i, j, kappa) * n(i, j, kappa);
      }
    }
    EXPECT_NEAR(frobenius_norm(row), std::sqrt(acc), 1e-12);
  }
}

class AlgebraProperties : public ::testing::TestWithParam<int> {};

TEST_P(AlgebraProperties, CircularHomomorphism)
{
  auto e = rng(1000 + static_cast<std::uint64_t>(GetParam()));
  std::uniform_int_distribution<Index> dim(1, 6);
  std::uniform_int_distribution<Index> depth(1, 5);
  Index const m = dim(e);
  Index const n = dim(e);
  Index const q = dim(e);
  Index const k = depth(e);
  DenseTensor3 const a = oracle::random_tensor({m, n, k}, e);
  DenseTensor3 const b = oracle::random_tensor({n, q, k}, e);
  Eigen::MatrixXd const ca = oracle::circ(a);
  Eigen::MatrixXd const cb = oracle::circ(b);

  EXPECT_LE(oracle::rel_error(circ_expand(tprod(a, b)), Eigen::MatrixXd(ca * cb)), 1e-9);
  EXPECT_NEAR(frobenius_norm(tprod(a, b)), (ca * cb).norm() / std::sqrt(static_cast<double>(k)),
              1e-9 * (ca * cb).norm());
  EXPECT_LE((circ_expand(ttranspose(a)) - ca.transpose()).norm(), 1e-12);
  EXPECT_LE(oracle::rel_error(ifft_mode3(fft_mode3(a)), a), 1e-12);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(ca);
  EXPECT_NEAR(spectral_norm(a), svd.singularValues()[0], 1e-9 * std::max(1.0, svd.singularValues()[0]));
}

INSTANTIATE_TEST_SUITE_P(Random, AlgebraProperties, ::testing::Range(0, 25));
