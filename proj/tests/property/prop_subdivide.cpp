#include <gtest/gtest.h>

#include "subdivision_properties.hpp"

using namespace tropocone::properties;

TEST(SubdivisionProperties, EngineOutputsAreValid) {
  PropertyResult r = engine_outputs_are_valid(7, 200);
  EXPECT_TRUE(r.ok()) << r.failure;
  EXPECT_EQ(r.cases, 200);
}

TEST(SubdivisionProperties, PullbackPreservesBalancing) {
  PropertyResult r = pullback_preserves_balancing(11, 200);
  EXPECT_TRUE(r.ok()) << r.failure;
  EXPECT_EQ(r.cases, 200);
}

TEST(SubdivisionProperties, PushforwardPreservesBalancing) {
  PropertyResult r = pushforward_preserves_balancing(13, 200);
  EXPECT_TRUE(r.ok()) << r.failure;
  EXPECT_EQ(r.cases, 200);
}

TEST(SubdivisionProperties, CrossProductsOfBalancedWeightsAreBalanced) {
  PropertyResult r = cross_products_are_balanced(17, 200);
  EXPECT_TRUE(r.ok()) << r.failure;
  EXPECT_EQ(r.cases, 200);
}

TEST(SubdivisionProperties, OrdConeCountsEqualChainCounts) {
  PropertyResult r = ord_counts_equal_chain_counts(19, 200);
  EXPECT_TRUE(r.ok()) << r.failure;
  EXPECT_EQ(r.cases, 200);
}
