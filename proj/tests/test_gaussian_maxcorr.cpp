#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "gaussmc/catalog.hpp"
#include "gaussmc/gaussian_maxcorr.hpp"
#include "gaussmc/maxcorr.hpp"
#include "gaussmc/random.hpp"
#include "gaussmc/standard_form.hpp"

using namespace gaussmc;

TEST(GaussianMaximalCorrelation, Examples) {
  EXPECT_NEAR(gaussian_maximal_correlation(ca_state(2.0, 1.0)).mu_g, 0.5, 1e-14);
  EXPECT_NEAR(gaussian_maximal_correlation(cc_state(2.0, 1.0)).mu_g, 0.5, 1e-14);
  EXPECT_NEAR(gaussian_maximal_correlation(tmsv_state(2.0)).mu_g, std::sqrt(3.0) / 2, 1e-14);
  const std::vector<double> l = {1.5, 4.0};
  EXPECT_NEAR(gaussian_maximal_correlation(GaussianState<double>::thermal(l)).mu_g, 0.0, 1e-15);
}

TEST(GaussianMaximalCorrelation, WitnessDirections) {
  const auto s = ca_state(2.0, 1.0);
  const auto rep = gaussian_maximal_correlation(s);
  const Matrix<double> ga = s.cov().topLeftCorner(2, 2), gb = s.cov().bottomRightCorner(2, 2);
  EXPECT_NEAR(rep.r_a.dot(ga * rep.r_a), 1.0, 1e-14);
  EXPECT_NEAR(rep.r_b.dot(gb * rep.r_b), 1.0, 1e-14);
  EXPECT_NEAR(rep.r_a.dot(s.cov().topRightCorner(2, 2) * rep.r_b), 0.5, 1e-14);
  EXPECT_FALSE(rep.multimode);
}

TEST(GaussianMaximalCorrelation, Errors) {
  EXPECT_THROW(gaussian_maximal_correlation(GaussianState<double>::vacuum(3)), StructuralError);
  EXPECT_THROW(gaussian_maximal_correlation(GaussianState<double>::vacuum(2), ModePartition::parse("0;1", 3)),
               StructuralError);
}

TEST(VParameter, Examples) {
  const std::vector<double> l = {1.5, 4.0};
  EXPECT_EQ(v_parameter(GaussianState<double>::thermal(l)), 1.0);
  EXPECT_NEAR(v_parameter(ca_state(2.0, 1.0)), 0.5, 1e-9);
}

TEST(MuGStandardForm, Examples) {
  EXPECT_DOUBLE_EQ(mu_g_standard_form(2.0, 2.0, 1.0, -1.0), 0.5);
  EXPECT_EQ(mu_g_standard_form(3.0, 3.0, 0.0, 0.0), 0.0);
}

TEST(GaussianMaximalCorrelationProperties, RandomStates) {
  const auto merged = ModePartition::parse("0,2;1,3", 4);
  for (int trial = 0; trial < 150; ++trial) {
    RandomSource rng(29, trial);
    const auto s = random_two_mode_state(rng);
    const double g = gaussian_maximal_correlation(s).mu_g;
    EXPECT_LT(g, 1.0);
    EXPECT_LE(g, maximal_correlation(s).mu + 1e-9);
    EXPECT_NEAR(v_parameter(s) + g, 1.0, 1e-8);

    const auto sf = bipartite_standard_form(s);
    EXPECT_NEAR(mu_g_standard_form(sf.lambdas[0], sf.lambdas[1], (*sf.nu)(0), (*sf.nu)(1)), g, 1e-10);

    const auto t = random_two_mode_state(rng);
    const auto rep = gaussian_maximal_correlation(tensor_product(s, t), merged);
    EXPECT_TRUE(rep.multimode);
    EXPECT_NEAR(rep.mu_g, std::max(g, gaussian_maximal_correlation(t).mu_g), 1e-9);

    for (double tau : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      EXPECT_LE(gaussian_maximal_correlation(lossy_channel(s, {0}, tau)).mu_g, g + 1e-12);
    }
  }
}

TEST(VParameter, MultimodeParties) {
  RandomSource rng(31, 0);
  const auto s = random_state(rng, 3);
  const auto p = ModePartition::parse("0,2;1", 3);
  EXPECT_NEAR(v_parameter(s, p) + gaussian_maximal_correlation(s, p).mu_g, 1.0, 1e-8);
}
