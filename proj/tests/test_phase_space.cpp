#include <gtest/gtest.h>

#include <cmath>

#include "gaussmc/catalog.hpp"
#include "gaussmc/gaussian_ops.hpp"
#include "gaussmc/phase_space.hpp"
#include "gaussmc/random.hpp"
#include "test_util.hpp"

using namespace gaussmc;
using gaussmc::testing::MatrixNear;

TEST(SymplecticForm, SingleMode) {
  Matrix<double> w(2, 2);
  w << 0, 1, -1, 0;
  EXPECT_EQ(symplectic_form<double>(1), w);
}

TEST(SymplecticForm, BlockStructureAndSquare) {
  for (int m = 1; m <= 5; ++m) {
    const auto w = symplectic_form<double>(m);
    EXPECT_EQ(w.rows(), 2 * m);
    EXPECT_TRUE(MatrixNear(w * w, -Matrix<double>::Identity(2 * m, 2 * m), 0));
    if (m == 2) {
      EXPECT_EQ(w.topRightCorner(2, 2), Matrix<double>::Zero(2, 2));
      EXPECT_EQ(w.bottomRightCorner(2, 2), symplectic_form<double>(1));
    }
  }
}

TEST(GaussianState, RejectsMalformedMoments) {
  EXPECT_THROW(GaussianState<double>::from_cov(Matrix<double>::Identity(3, 3)), StructuralError);
  EXPECT_THROW(GaussianState<double>(Vector<double>::Zero(3), Matrix<double>::Identity(2, 2)), StructuralError);
  Matrix<double> bad = Matrix<double>::Identity(2, 2);
  bad(0, 0) = std::nan("");
  EXPECT_THROW(GaussianState<double>::from_cov(bad), StructuralError);
}

TEST(ValidatePhysical, Examples) {
  const auto vac = GaussianState<double>::vacuum(1);
  const auto v = validate_physical(vac);
  EXPECT_TRUE(v.physical);
  EXPECT_TRUE(v.boundary);
  EXPECT_NEAR(v.min_eigenvalue, 0.0, 1e-15);

  const auto half = GaussianState<double>::from_cov(0.5 * Matrix<double>::Identity(2, 2));
  const auto h = validate_physical(half);
  EXPECT_FALSE(h.physical);
  EXPECT_NEAR(h.min_eigenvalue, -0.5, 1e-14);
  EXPECT_THROW(require_physical(half), UnphysicalError);

  // CA(2,2) lies beyond sqrt(lambda^2 - 1); built by hand because ca_state rejects it.
  Matrix<double> g = 2 * Matrix<double>::Identity(4, 4);
  g(0, 2) = g(2, 0) = 2;
  g(1, 3) = g(3, 1) = -2;
  const auto c = validate_physical(GaussianState<double>::from_cov(g));
  EXPECT_FALSE(c.physical);
  EXPECT_NEAR(c.min_eigenvalue, -0.2360679774997898, 1e-12);  // tests/oracles/frozen_values.py

  EXPECT_NEAR(validate_physical(ca_state(2.0, 1.0)).min_eigenvalue, 0.5857864376269042, 1e-12);
}

TEST(ValidatePhysical, AsymmetricIsUnphysical) {
  Matrix<double> g = 2 * Matrix<double>::Identity(2, 2);
  g(0, 1) = 1e-6;
  const auto c = validate_physical(GaussianState<double>::from_cov(g));
  EXPECT_FALSE(c.symmetric);
  EXPECT_FALSE(c.physical);
}

TEST(Purity, Examples) {
  EXPECT_DOUBLE_EQ(purity(GaussianState<double>::vacuum(1)), 1.0);
  EXPECT_NEAR(purity(GaussianState<double>::from_cov(2 * Matrix<double>::Identity(2, 2))), 0.5, 1e-15);
  EXPECT_NEAR(purity(tmsv_state(2.0)), 1.0, 1e-12);
  EXPECT_THROW(purity(GaussianState<double>::from_cov(Matrix<double>::Zero(2, 2))), UnphysicalError);
}

TEST(IsClassical, Examples) {
  EXPECT_TRUE(is_classical(GaussianState<double>::vacuum(1)));
  EXPECT_TRUE(is_classical(cc_state(2.0, 1.0)));
  EXPECT_FALSE(is_classical(tmsv_state(2.0)));
  const auto n = tmsv_state(2.0).cov().rows();
  EXPECT_NEAR(min_eigenvalue(tmsv_state(2.0).cov() - Matrix<double>::Identity(n, n)), -0.7320508075688772, 1e-12);
}

TEST(Marginal, CaMarginalIsThermal) {
  const auto a = marginal(ca_state(2.0, 1.0), {0});
  EXPECT_TRUE(MatrixNear(a.cov(), 2 * Matrix<double>::Identity(2, 2), 0));
  EXPECT_TRUE(MatrixNear(a.mean(), Vector<double>::Zero(2), 0));
}

TEST(Marginal, ProductFactorAndErrors) {
  const std::vector<double> l = {1.5, 3.0};
  const auto rho = GaussianState<double>::thermal(l);
  const auto sigma = ca_state(2.0, 1.0);
  const auto prod = tensor_product(rho, sigma);
  EXPECT_TRUE(MatrixNear(marginal(prod, {2, 3}).cov(), sigma.cov(), 0));
  EXPECT_TRUE(MatrixNear(marginal(prod, {0, 1}).cov(), rho.cov(), 0));
  EXPECT_THROW(marginal(prod, {0, 0}), StructuralError);
  EXPECT_THROW(marginal(prod, {4}), StructuralError);
  EXPECT_THROW(marginal(prod, std::span<const int>{}), StructuralError);
}

TEST(ModePartition, ParseAndValidate) {
  const auto p = ModePartition::parse("0,2;1,3", 4);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0], (std::vector<int>{0, 2}));
  EXPECT_EQ(p.coordinates(1), (std::vector<Eigen::Index>{2, 3, 6, 7}));
  EXPECT_THROW(ModePartition::parse("0,1", 3), StructuralError);
  EXPECT_THROW(ModePartition::parse("0;0,1", 2), StructuralError);
  EXPECT_THROW(ModePartition::parse("0;;1", 2), StructuralError);
  EXPECT_THROW(ModePartition::parse("0;x", 2), StructuralError);
}

TEST(PhaseSpaceProperties, RandomStates) {
  for (int trial = 0; trial < 100; ++trial) {
    RandomSource rng(7, trial);
    const int m = 1 + trial % 3;
    const auto s = random_state(rng, m);
    ASSERT_TRUE(validate_physical(s).physical);
    // Physical covariances are positive definite.
    EXPECT_GT(min_eigenvalue(s.cov()), 0.0);
    // Marginals of physical states are physical, and nested marginals compose.
    for (int j = 0; j < m; ++j) EXPECT_TRUE(validate_physical(marginal(s, {j})).physical);
    if (m == 3) {
      EXPECT_TRUE(MatrixNear(marginal(marginal(s, {2, 0}), {1}).cov(), marginal(s, {0}).cov(), 0));
    }
    if (is_classical(s)) {
      EXPECT_TRUE(validate_physical(s).physical);
    }
    // Purity is a symplectic invariant.
    const auto moved = apply_unitary(s, random_local_unitary(rng, m));
    EXPECT_NEAR(purity(moved), purity(s), 1e-9);
  }
}

TEST(PhaseSpace, LongDoubleInstantiation) {
  Matrix<long double> g = 2 * Matrix<long double>::Identity(4, 4);
  g(0, 2) = g(2, 0) = 1;
  g(1, 3) = g(3, 1) = -1;
  const auto s = GaussianState<long double>::from_cov(g);
  EXPECT_TRUE(validate_physical(s).physical);
  EXPECT_NEAR(static_cast<double>(purity(s)), 1.0 / 3.0, 1e-15);
}
