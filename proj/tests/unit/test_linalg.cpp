#include <gtest/gtest.h>

#include "test_util.hpp"
#include "tropocone/error.hpp"
#include "tropocone/linalg.hpp"

using namespace tropocone;
using tropocone::testing::M;
using tropocone::testing::V;

TEST(SmithNormalForm, IdentityIsFixed) {
  auto s = smith_normal_form(M({{1, 0}, {0, 1}}));
  EXPECT_EQ(s.D, M({{1, 0}, {0, 1}}));
}

TEST(SmithNormalForm, TwoByTwoExample) {
  IntMatrix A = M({{2, 4}, {6, 8}});
  auto s = smith_normal_form(A);
  // Oracle by hand: gcd of entries is 2, |det| = 8, so the factors are 2 and 4.
  EXPECT_EQ(s.D, M({{2, 0}, {0, 4}}));
  EXPECT_EQ(s.U * A * s.V, s.D);
  EXPECT_EQ(abs(determinant(s.U)), 1);
  EXPECT_EQ(abs(determinant(s.V)), 1);
  EXPECT_EQ(s.V * s.Vinv, IntMatrix::identity(2));
}

TEST(SmithNormalForm, ZeroMatrix) {
  auto s = smith_normal_form(M({{0}}));
  EXPECT_EQ(s.D, M({{0}}));
  EXPECT_EQ(s.rank, 0u);
}

TEST(SmithNormalForm, RectangularWithDivisibilityFixup) {
  IntMatrix A = M({{2, 0, 0}, {0, 3, 0}});
  auto s = smith_normal_form(A);
  EXPECT_EQ(s.diagonal(), V({1, 6}));
  EXPECT_EQ(s.U * A * s.V, s.D);
}

TEST(LatticeIndex, DiagonalSublattice) {
  Lattice sup = Lattice::standard(2);
  Lattice sub{2, M({{2, 0}, {0, 3}})};
  EXPECT_EQ(lattice_index(sup, sub), Int(6));
}

TEST(LatticeIndex, Identity) {
  EXPECT_EQ(lattice_index(Lattice::standard(2), Lattice::standard(2)), Int(1));
}

TEST(LatticeIndex, RankDropIsInfinite) {
  Lattice sub{2, M({{2, 0}})};
  EXPECT_FALSE(lattice_index(Lattice::standard(2), sub).has_value());
}

TEST(LatticeIndex, NotSublatticeThrows) {
  Lattice sup{2, M({{2, 0}, {0, 1}})};
  Lattice sub{2, M({{1, 0}})};
  try {
    lattice_index(sup, sub);
    FAIL() << "expected NotSublattice";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSublattice);
  }
}

TEST(Quotient, DropOneCoordinate) {
  auto q = quotient(2, M({{1, 0}}));
  EXPECT_EQ(q.free_rank, 1u);
  EXPECT_TRUE(q.torsion_factors.empty());
  // The projection must kill (1,0) and send (0,1) to a generator.
  EXPECT_TRUE(is_zero(q.projection * V({1, 0})));
  EXPECT_EQ(abs((q.projection * V({0, 1}))[0]), 1);
  EXPECT_EQ(q.projection * q.lift, IntMatrix::identity(1));
}

TEST(Quotient, CyclicOfOrderTwo) {
  auto q = quotient(1, M({{2}}));
  EXPECT_EQ(q.free_rank, 0u);
  EXPECT_EQ(q.torsion_factors, V({2}));
  EXPECT_FALSE(q.contains(V({1})));
  EXPECT_TRUE(q.contains(V({4})));
}

TEST(Quotient, TorsionOnlyInRankTwo) {
  auto q = quotient(2, M({{2, 0}, {0, 1}}));
  EXPECT_EQ(q.free_rank, 0u);
  EXPECT_EQ(q.torsion_factors, V({2}));
  EXPECT_FALSE(q.contains(V({1, 0})));
  EXPECT_TRUE(q.contains(V({0, 5})));
}

TEST(SolveInteger, Examples) {
  EXPECT_EQ(solve_integer(M({{2}}), V({4})), V({2}));
  EXPECT_FALSE(solve_integer(M({{2}}), V({3})).has_value());
  // Direct substitution: 1*(-1) + 2*1 = 1 and 3*(-1) + 4*1 = 1.
  EXPECT_EQ(solve_integer(M({{1, 2}, {3, 4}}), V({1, 1})), V({-1, 1}));
}

TEST(SolveInteger, InconsistentSystem) {
  EXPECT_FALSE(solve_integer(M({{1, 1}, {1, 1}}), V({1, 2})).has_value());
}

TEST(Primitive, Examples) {
  EXPECT_EQ(primitive(V({2, 4})), V({1, 2}));
  EXPECT_EQ(primitive(V({0, -3})), V({0, -1}));
  EXPECT_EQ(primitive(V({6, 10, 15})), V({6, 10, 15}));
  try {
    primitive(V({0, 0}));
    FAIL() << "expected ZeroVector";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroVector);
  }
}

TEST(Kernel, SaturatedBasis) {
  IntMatrix K = integer_kernel(M({{2, 2}}));
  ASSERT_EQ(K.rows(), 1u);
  EXPECT_EQ(K.row(0), V({1, -1}));
}

TEST(Hermite, CanonicalAcrossGenerators) {
  EXPECT_EQ(hermite_normal_form(M({{2, 4}, {1, 1}})), hermite_normal_form(M({{1, 1}, {0, 2}})));
  EXPECT_EQ(rank(M({{1, 2}, {2, 4}})), 1u);
}

TEST(Determinant, Bareiss) {
  EXPECT_EQ(determinant(M({{2, 4}, {6, 8}})), -8);
  EXPECT_EQ(determinant(M({{0, 1}, {1, 0}})), -1);
  EXPECT_EQ(determinant(M({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}})), -3);
}

TEST(BigIntegers, NoOverflow) {
  Int big("1000000000000000000000000000000");
  IntMatrix A(1, 1);
  A(0, 0) = big;
  auto x = solve_integer(A, Vec{big * 7});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0], 7);
}
