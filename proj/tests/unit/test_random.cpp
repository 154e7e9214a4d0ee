#include <gtest/gtest.h>

#include "qdet/random.hpp"
#include "support/expect_error.hpp"
#include "support/instances.hpp"
#include "support/oracles.hpp"

namespace qdet {
namespace {

TEST(RandomStateSet, SameSeedSameOutput) {
  const StateSet a = random_state_set(4, 3, 1234, GenericMode{});
  const StateSet b = random_state_set(4, 3, 1234, GenericMode{});
  EXPECT_EQ(a.amplitudes(), b.amplitudes());
  EXPECT_EQ(a.fingerprint(), b.fingerprint());
  const StateSet c = random_state_set(4, 3, 1235, GenericMode{});
  EXPECT_NE(a.fingerprint(), c.fingerprint());
}

TEST(RandomStateSet, IndependentModeHasFullRankGram) {
  const StateSet s = random_state_set(2, 2, 7, IndependentMode{});
  EXPECT_GT(std::abs(testing::cofactor_det(gram(s))), 1e-6);
  EXPECT_TRUE(linear_independence(s).independent);
}

TEST(RandomStateSet, IndependentModeNeedsNAtMostD) {
  testing::expect_error(ErrorCode::InvalidDimensions,
                        [] { random_state_set(2, 3, 1, IndependentMode{}); });
}

TEST(RandomStateSet, RejectsEmptyDimensions) {
  testing::expect_error(ErrorCode::InvalidDimensions,
                        [] { random_state_set(0, 1, 1, GenericMode{}); });
  testing::expect_error(ErrorCode::InvalidDimensions,
                        [] { random_state_set(2, 0, 1, GenericMode{}); });
}

TEST(RandomStateSet, UnitaryImageOfBasisIsOrthonormal) {
  const StateSet img = random_state_set(4, 4, 3, UnitaryImageMode{testing::basis(4)});
  EXPECT_LE((gram(img) - ComplexMatrix::Identity(4, 4)).norm(), 1e-12);
}

TEST(RandomStateSet, UnitaryImagePreservesGramAndIndependence) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Index d = 2 + static_cast<Index>(seed % 5);
    const Index n = 1 + static_cast<Index>(seed % 7);
    const StateSet base = random_state_set(d, n, seed, GenericMode{});
    const StateSet img = random_state_set(d, n, seed + 1000, UnitaryImageMode{base});
    const ComplexMatrix dg = gram(img) - gram(base);
    EXPECT_LE(dg.cwiseAbs().maxCoeff(), 1e-12) << "seed " << seed;
    const auto a = linear_independence(base);
    const auto b = linear_independence(img);
    EXPECT_EQ(a.independent, b.independent);
    EXPECT_EQ(a.rank, b.rank);
  }
}

TEST(RandomStateSet, UnitaryImageNeedsMatchingShape) {
  testing::expect_error(ErrorCode::InvalidDimensions, [] {
    random_state_set(3, 3, 1, UnitaryImageMode{testing::basis(2)});
  });
}

TEST(RandomUnitary, IsUnitary) {
  Rng rng(77);
  for (Index d = 1; d <= 8; ++d) {
    const ComplexMatrix u = random_unitary(d, rng);
    EXPECT_LE((u.adjoint() * u - ComplexMatrix::Identity(d, d)).norm(), 1e-13);
  }
}

TEST(Rng, UniformStaysInUnitInterval) {
  Rng rng(5);
  double lo = 1.0;
  double hi = 0.0;
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = rng.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_GE(lo, 0.0);
  EXPECT_LT(hi, 1.0);
  EXPECT_NEAR(sum / 20000.0, 0.5, 0.01);
}

TEST(Rng, ComplexNormalHasUnitSecondMoment) {
  Rng rng(6);
  double m2 = 0.0;
  for (int i = 0; i < 40000; ++i) m2 += std::norm(rng.complex_normal());
  EXPECT_NEAR(m2 / 40000.0, 1.0, 0.03);
}

}  // namespace
}  // namespace qdet
