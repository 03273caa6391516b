#include <gtest/gtest.h>

#include <cmath>

#include "gaussmc/catalog.hpp"
#include "gaussmc/linalg.hpp"
#include "gaussmc/maxcorr.hpp"
#include "gaussmc/random.hpp"
#include "gaussmc/ribbon.hpp"
#include "test_util.hpp"

using namespace gaussmc;
using gaussmc::testing::MatrixNear;

namespace {

const double kThetaStar = 0.6339745962155614;  // tests/oracles/frozen_values.py

}  // namespace

TEST(RibbonGram, ProductOfThermalsIsIdentity) {
  const std::vector<double> l = {1.5, 3.0, 2.0};
  const auto g = ribbon_gram(GaussianState<double>::thermal(l));
  EXPECT_TRUE(MatrixNear(g.g1, ComplexMatrix<double>::Identity(6, 6), 1e-14));
}

TEST(RibbonGram, CaOffDiagonalBlock) {
  const auto g = ribbon_gram(ca_state(2.0, 1.0));
  const Eigen::JacobiSVD<ComplexMatrix<double>> svd(g.g1.topRightCorner(2, 2));
  EXPECT_NEAR(svd.singularValues()(0), 1 / std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(svd.singularValues()(1), 1 / std::sqrt(3.0), 1e-14);
}

TEST(RibbonGram, OffDiagonalBlockIsQ1AndGramIsPsd) {
  for (int trial = 0; trial < 50; ++trial) {
    RandomSource rng(37, trial);
    const auto s = random_state(rng, 2 + trial % 3);
    const auto g = ribbon_gram(s);
    EXPECT_LE((g.g1 - g.g1.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_GE(min_eigenvalue(g.g1), -1e-12);
    if (s.modes() == 2) {
      const auto rep = maximal_correlation(s);
      const Eigen::JacobiSVD<ComplexMatrix<double>> svd(g.g1.topRightCorner(2, 2));
      EXPECT_NEAR(svd.singularValues()(0), rep.mu, 1e-10);
    }
  }
}

TEST(RibbonGram, DropsDecoupledModes) {
  const std::vector<double> l = {1.0, 2.0};
  const auto g = ribbon_gram(GaussianState<double>::thermal(l));
  EXPECT_EQ(g.modes, std::vector<int>{1});
  EXPECT_EQ(g.g1.rows(), 2);
}

TEST(InRibbon, Examples) {
  const auto ca = ca_state(2.0, 1.0);
  EXPECT_TRUE(in_ribbon(ca, {0.5, 0.5}));
  EXPECT_TRUE(in_ribbon(ca, {0.6, 0.6}));
  EXPECT_FALSE(in_ribbon(ca, {0.7, 0.7}));
  const auto boundary = in_ribbon(ca, {kThetaStar, kThetaStar});
  EXPECT_TRUE(boundary.accepted);
  EXPECT_NEAR(boundary.margin, 0.0, 1e-12);

  const std::vector<double> l = {1.5, 3.0};
  EXPECT_TRUE(in_ribbon(GaussianState<double>::thermal(l), {1.0, 1.0}));
  EXPECT_TRUE(in_ribbon(tmsv_state(2.0), {0.0, 1.0}));
  EXPECT_THROW(in_ribbon(ca, {0.5}), StructuralError);
  EXPECT_THROW(in_ribbon(ca, {0.5, 1.5}), ParameterError);
}

TEST(BipartiteRibbonCheck, Examples) {
  EXPECT_TRUE(bipartite_ribbon_check(1.0, 0.3, 0.7));
  EXPECT_FALSE(bipartite_ribbon_check(1.0, 0.31, 0.7));
  EXPECT_TRUE(bipartite_ribbon_check(0.0, 1.0, 1.0));
  EXPECT_TRUE(bipartite_ribbon_check(1 / std::sqrt(3.0), kThetaStar, kThetaStar));
  EXPECT_FALSE(bipartite_ribbon_check(1 / std::sqrt(3.0), 0.7, 0.7));
  EXPECT_THROW(bipartite_ribbon_check(1.5, 0.5, 0.5), ParameterError);
}

TEST(InGaussianRibbon, Examples) {
  const auto cc = cc_state(2.0, 1.0);
  const auto b = in_gaussian_ribbon(cc, {2.0 / 3, 2.0 / 3});
  EXPECT_TRUE(b.accepted);
  EXPECT_NEAR(b.margin, 0.0, 1e-12);
  EXPECT_FALSE(in_gaussian_ribbon(cc, {0.7, 0.7}));
  const std::vector<double> l = {1.5, 3.0, 2.0};
  EXPECT_TRUE(in_gaussian_ribbon(GaussianState<double>::thermal(l), {1.0, 1.0, 1.0}));
  EXPECT_THROW(in_gaussian_ribbon(cc, {0.5, 0.5, 0.5}), StructuralError);
}

TEST(RibbonBoundaryScale, MatchesClosedForm) {
  Vector<double> diag(2);
  diag << 1, 1;
  EXPECT_NEAR(ribbon_boundary_scale(ca_state(2.0, 1.0), diag), kThetaStar, 1e-12);
  // mu = 1: the boundary is theta1 + theta2 = 1.
  Vector<double> d(2);
  d << 1, 0.25;
  EXPECT_NEAR(ribbon_boundary_scale(tmsv_state(2.0), d), 0.8, 1e-9);
}

TEST(RibbonProperties, RandomStates) {
  for (int trial = 0; trial < 40; ++trial) {
    RandomSource rng(41, trial);
    const int m = 2 + trial % 2;
    const auto s = random_state(rng, m);
    const double mu = m == 2 ? maximal_correlation(s).mu : 0.0;
    for (int k = 0; k < 40; ++k) {
      Vector<double> theta(m);
      for (int j = 0; j < m; ++j) theta(j) = rng.uniform();
      const auto q = in_ribbon(s, ThetaPoint<double>(theta));
      const Vector<double> small = theta / theta.sum();
      EXPECT_TRUE(in_ribbon(s, ThetaPoint<double>(small)));
      EXPECT_TRUE(in_gaussian_ribbon(s, ThetaPoint<double>(small)));
      if (q.margin > 1e-6) {
        EXPECT_TRUE(in_gaussian_ribbon(s, ThetaPoint<double>(theta)));
      }
      if (q.accepted) {
        EXPECT_TRUE(in_ribbon(s, ThetaPoint<double>(Vector<double>(0.5 * theta))));
      }
      if (m == 2) {
        const double gap = (1 / theta(0) - 1) * (1 / theta(1) - 1) - mu * mu;
        if (std::abs(gap) > 1e-6) {
          EXPECT_EQ(q.accepted, gap > 0);
        }
      }
    }
  }
}
