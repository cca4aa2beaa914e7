#include "cvsteer/quad_forms.hpp"

#include <gtest/gtest.h>

using namespace cvsteer;

TEST(QuadForms, TripartiteBipartitions) {
  auto parts = enumerate_bipartitions(3);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0].label(), "1|23");
  EXPECT_EQ(parts[1].label(), "2|13");
  EXPECT_EQ(parts[2].label(), "3|12");
}

TEST(QuadForms, BipartitionCounts) {
  for (int n = 2; n <= 10; ++n) EXPECT_EQ(enumerate_bipartitions(n).size(), (1u << (n - 1)) - 1) << n;
  auto four = enumerate_bipartitions(4);
  EXPECT_EQ(four.back().label(), "14|23");
}

TEST(QuadForms, EnumerationLimit) {
  EXPECT_THROW(enumerate_bipartitions(21), std::domain_error);
  EXPECT_THROW(enumerate_bipartitions(1), std::invalid_argument);
}

TEST(QuadForms, ModeLabels) {
  EXPECT_EQ(mode_label({0, 2}), "13");
  EXPECT_EQ(mode_label({0, 9}), "1,10");
}

TEST(QuadForms, UncertaintyBound) {
  QuadratureForm u = x_form({1.0, -0.5, 2.0});
  QuadratureForm v = p_form({1.0, 3.0, 0.5});
  EXPECT_DOUBLE_EQ(uncertainty_bound(u, v, {0}), 1.0);
  EXPECT_DOUBLE_EQ(uncertainty_bound(u, v, {1, 2}), 0.5);
  EXPECT_DOUBLE_EQ(uncertainty_bound(u, v, {0, 1, 2}), 0.5);
}

TEST(QuadForms, VacuumProduct) {
  EXPECT_DOUBLE_EQ(steering_product(vacuum(2), x_form({1, 0}), p_form({1, 0})), 1.0);
  EXPECT_DOUBLE_EQ(steering_product(vacuum(2), x_form({1, 1}), p_form({1, -1})), 2.0);
}
