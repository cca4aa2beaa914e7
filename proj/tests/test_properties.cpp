#include "cvsteer/criteria.hpp"
#include "cvsteer/networks.hpp"
#include "cvsteer/sweeps.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace cvsteer;

TEST(Properties, RandomNetworks) {
  oracle::PropertyTally t = oracle::run_property_suite(200, 7);
  EXPECT_EQ(t.specs, 200);
  EXPECT_EQ(t.symplectic, 0);
  EXPECT_EQ(t.construction, 0);
  EXPECT_EQ(t.physical, 0);
  EXPECT_EQ(t.product_sum, 0);
  EXPECT_EQ(t.lattice, 0);
  EXPECT_EQ(t.grid, 0);
  for (const std::string& f : t.failures) ADD_FAILURE() << f;
}

TEST(Properties, GridOracleFindsKnownOptimum) {
  GaussianState s = cv_epr(2, 0.6);
  oracle::GridResult g = oracle::grid_steering(s.cov, {0}, {1});
  EXPECT_NEAR(g.value, oracle::epr_steering(0.6), 1e-4);
  EXPECT_NEAR(g.h[1], -std::tanh(1.2), 0.01);
}

TEST(Properties, SteeringNeverBelowHeisenbergForSeparable) {
  GaussianState s = apply(vacuum(3), squeezer(3, 0, 1.5, Axis::x_squeezed));
  for (auto [a, b] : {std::pair<std::vector<int>, std::vector<int>>{{0}, {1, 2}}, {{1, 2}, {0}}})
    EXPECT_GE(optimize_steering_gains(s, a, b).value, 1.0 - 1e-9);
}

TEST(Properties, OptimizedNeverWorseThanAnalytic) {
  for (Family f : {Family::epr, Family::ss, Family::ghz, Family::ghz_asym})
    for (double r : {0.2, 0.9, 1.8}) {
      GaussianState s = make_state(f, 3, r);
      EXPECT_LE(optimize_steering_gains(s, {0}, {1, 2}).value, symmetric_steering(f, 3, r) + 1e-9);
    }
}

TEST(Properties, LargeSystemsLimit) {
  for (double r2 : {0.5, 1.0}) EXPECT_NEAR(oracle::ghz_asym_steering(100, r2), std::exp(-2 * r2), 0.01);
}
