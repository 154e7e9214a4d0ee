#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "qdet/error.hpp"
#include "qdet/numerics.hpp"
#include "qdet/random.hpp"
#include "support/expect_error.hpp"
#include "support/oracles.hpp"

namespace qdet {
namespace {

ComplexMatrix random_hermitian(Index n, Rng& rng) {
  ComplexMatrix a(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) a(i, j) = rng.complex_normal();
  }
  return 0.5 * (a + a.adjoint());
}

ComplexMatrix hermitian_with_spectrum(const RealVector& spectrum, Rng& rng) {
  const ComplexMatrix u = random_unitary(spectrum.size(), rng);
  return u * spectrum.cast<Complex>().asDiagonal() * u.adjoint();
}

TEST(HermitianEig, IdentityHasUnitSpectrum) {
  const auto eig = hermitian_eig(ComplexMatrix::Identity(2, 2));
  EXPECT_NEAR(eig.eigenvalues(0), 1.0, 1e-15);
  EXPECT_NEAR(eig.eigenvalues(1), 1.0, 1e-15);
}

TEST(HermitianEig, AllOnesIsRankOne) {
  const auto eig = hermitian_eig(ComplexMatrix::Ones(2, 2));
  EXPECT_NEAR(eig.eigenvalues(0), 2.0, 1e-14);
  EXPECT_NEAR(eig.eigenvalues(1), 0.0, 1e-14);
}

TEST(HermitianEig, MatchesCompanionMatrixRoots) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    const ComplexMatrix h = random_hermitian(5, rng);
    const auto eig = hermitian_eig(h);
    const auto roots = testing::companion_eigenvalues(h);
    for (Index i = 0; i < 5; ++i) {
      EXPECT_NEAR(eig.eigenvalues(i), roots[static_cast<std::size_t>(i)], 1e-8)
          << "seed " << seed << " index " << i;
    }
  }
}

TEST(HermitianEig, ReconstructionAndOrthonormality) {
  for (Index n = 1; n <= 16; ++n) {
    Rng rng(100 + static_cast<std::uint64_t>(n));
    const ComplexMatrix h = random_hermitian(n, rng);
    const auto eig = hermitian_eig(h);
    const double scale = std::max(1.0, h.norm());
    const ComplexMatrix& v = eig.eigenvectors;
    const ComplexMatrix rebuilt = v * eig.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint();
    EXPECT_LE((rebuilt - h).norm(), 1e-10 * scale) << "n=" << n;
    EXPECT_LE((v.adjoint() * v - ComplexMatrix::Identity(n, n)).norm(), 1e-10) << "n=" << n;
    for (Index i = 1; i < n; ++i) EXPECT_GE(eig.eigenvalues(i - 1), eig.eigenvalues(i));
  }
}

TEST(HermitianEig, RejectsNonHermitian) {
  ComplexMatrix a(2, 2);
  a << 1.0, 2.0, 0.0, 1.0;
  testing::expect_error(ErrorCode::NotHermitian, [&] { hermitian_eig(a); });
}

TEST(HermitianEig, RejectsNonFinite) {
  ComplexMatrix a = ComplexMatrix::Identity(2, 2);
  a(0, 0) = std::numeric_limits<double>::quiet_NaN();
  testing::expect_error(ErrorCode::NotFinite, [&] { hermitian_eig(a); });
}

TEST(HermitianEig, RejectsNonSquare) {
  testing::expect_error(ErrorCode::InvalidDimensions, [&] { hermitian_eig(ComplexMatrix::Zero(2, 3)); });
}

TEST(PsdCheck, Identity) {
  const auto r = psd_check(ComplexMatrix::Identity(3, 3));
  EXPECT_TRUE(r.is_psd);
  EXPECT_NEAR(r.min_eigenvalue, 1.0, 1e-15);
}

TEST(PsdCheck, OffDiagonalAboveOneIsIndefinite) {
  ComplexMatrix h(2, 2);
  h << 1.0, std::numbers::sqrt2, std::numbers::sqrt2, 1.0;
  const auto r = psd_check(h);
  EXPECT_FALSE(r.is_psd);
  EXPECT_NEAR(r.min_eigenvalue, 1.0 - std::numbers::sqrt2, 1e-14);
}

TEST(PsdCheck, RankOneBoundaryIsPsd) {
  const auto r = psd_check(ComplexMatrix::Ones(2, 2));
  EXPECT_TRUE(r.is_psd);
  EXPECT_NEAR(r.min_eigenvalue, 0.0, 1e-14);
}

TEST(PsdCheck, AgreesWithSylvesterCriterion) {
  int checked = 0;
  for (std::uint64_t seed = 1; checked < 400; ++seed) {
    Rng rng(seed);
    const Index n = 2 + static_cast<Index>(seed % 2);
    RealVector spectrum(n);
    for (Index i = 0; i < n; ++i) {
      double x = 0.0;
      do {
        x = 2.0 * rng.uniform() - 0.6;  // biased so both outcomes are common
      } while (std::abs(x) < 1e-6);
      spectrum(i) = x;
    }
    const ComplexMatrix h = hermitian_with_spectrum(spectrum, rng);
    EXPECT_EQ(psd_check(h).is_psd, testing::sylvester_positive_definite(h)) << "seed " << seed;
    ++checked;
  }
}

TEST(PsdFactor, IdentityFactorsToUnitary) {
  const ComplexMatrix c = psd_factor(ComplexMatrix::Identity(4, 4));
  EXPECT_EQ(c.cols(), 4);
  EXPECT_LE((c * c.adjoint() - ComplexMatrix::Identity(4, 4)).norm(), 1e-14);
}

TEST(PsdFactor, AllOnesGivesSingleUnitModulusColumn) {
  const Index n = 5;
  const ComplexMatrix c = psd_factor(ComplexMatrix::Ones(n, n));
  ASSERT_EQ(c.cols(), 1);
  for (Index j = 0; j < n; ++j) EXPECT_NEAR(std::abs(c(j, 0)), 1.0, 1e-14);
  EXPECT_LE((c * c.adjoint() - ComplexMatrix::Ones(n, n)).norm(), 1e-13);
}

TEST(PsdFactor, RecoversRankOfLowRankProduct) {
  Rng rng(5);
  ComplexMatrix b(4, 2);
  for (Index j = 0; j < 2; ++j) {
    for (Index i = 0; i < 4; ++i) b(i, j) = rng.complex_normal();
  }
  const ComplexMatrix m = b * b.adjoint();
  const ComplexMatrix c = psd_factor(m);
  EXPECT_EQ(c.cols(), 2);
  EXPECT_LE((c * c.adjoint() - m).norm(), 1e-10);
}

TEST(PsdFactor, RoundTripOnRandomPsd) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Rng rng(seed);
    const Index n = 1 + static_cast<Index>(seed % 8);
    const Index r = 1 + static_cast<Index>(seed % static_cast<std::uint64_t>(n));
    ComplexMatrix b(n, r);
    for (Index j = 0; j < r; ++j) {
      for (Index i = 0; i < n; ++i) b(i, j) = rng.complex_normal();
    }
    const ComplexMatrix m = b * b.adjoint();
    const ComplexMatrix c = psd_factor(m);
    EXPECT_EQ(c.cols(), r) << "seed " << seed;
    EXPECT_LE((c * c.adjoint() - m).norm(), 1e-10) << "seed " << seed;
  }
}

TEST(PsdFactor, ClampsTinyNegativeEigenvalues) {
  Rng rng(9);
  RealVector spectrum(3);
  spectrum << 2.0, 1.0, -1e-12;
  const ComplexMatrix m = hermitian_with_spectrum(spectrum, rng);
  const ComplexMatrix c = psd_factor(m);
  EXPECT_EQ(c.cols(), 2);
  EXPECT_LE((c * c.adjoint() - m).norm(), 1e-10);
}

TEST(PsdFactor, RejectsIndefinite) {
  ComplexMatrix h(2, 2);
  h << 1.0, 2.0, 2.0, 1.0;
  testing::expect_error(ErrorCode::NotPSD, [&] { psd_factor(h); });
}

TEST(SolveLinear, IdentityReturnsRhs) {
  Rng rng(3);
  ComplexMatrix b(3, 2);
  for (Index j = 0; j < 2; ++j) {
    for (Index i = 0; i < 3; ++i) b(i, j) = rng.complex_normal();
  }
  EXPECT_LE((solve_linear(ComplexMatrix::Identity(3, 3), b) - b).norm(), 1e-15);
}

TEST(SolveLinear, ScaledIdentity) {
  const ComplexMatrix x =
      solve_linear(2.0 * ComplexMatrix::Identity(3, 3), ComplexMatrix::Identity(3, 3));
  EXPECT_LE((x - 0.5 * ComplexMatrix::Identity(3, 3)).norm(), 1e-15);
}

TEST(SolveLinear, RandomWellConditionedResidual) {
  Rng rng(11);
  const ComplexMatrix a = random_unitary(6, rng) + 0.5 * ComplexMatrix::Identity(6, 6);
  ComplexMatrix b(6, 3);
  for (Index j = 0; j < 3; ++j) {
    for (Index i = 0; i < 6; ++i) b(i, j) = rng.complex_normal();
  }
  const ComplexMatrix x = solve_linear(a, b);
  EXPECT_LE((a * x - b).norm(), 1e-10 * b.norm());
}

TEST(SolveLinear, SingularMatrixIsRejected) {
  ComplexMatrix a(2, 2);
  a << 1.0, 1.0, 1.0, 1.0;
  testing::expect_error(ErrorCode::SingularMatrix,
              [&] { solve_linear(a, ComplexMatrix::Identity(2, 2)); });
}

}  // namespace
}  // namespace qdet
