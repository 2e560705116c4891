#include <gtest/gtest.h>

#include "test_util.hpp"
#include "tropocone/complex.hpp"
#include "tropocone/error.hpp"

using namespace tropocone;
using tropocone::testing::M;
using tropocone::testing::V;

namespace {

std::vector<Rat> Q(std::initializer_list<long> xs) {
  std::vector<Rat> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

PolyhedralComplex tropical_line() {
  PolyhedralComplex pc;
  pc.ambient_dim = 2;
  pc.cells.push_back({{Q({0, 0})}, {}});
  pc.cells.push_back({{Q({0, 0})}, {V({-1, 0})}});
  pc.cells.push_back({{Q({0, 0})}, {V({0, -1})}});
  pc.cells.push_back({{Q({0, 0})}, {V({1, 1})}});
  return pc;
}

}  // namespace

TEST(Complex, SingleOpenCone) {
  auto c = PoicComplex::make({Poic::open_orthant(1)}, {});
  EXPECT_EQ(c.size(), 1u);
  EXPECT_TRUE(c.is_pure(1));
}

TEST(Complex, QuadrantFaceComplex) {
  auto c = face_complex(Poic::closed_orthant(2));
  EXPECT_EQ(c.size(), 4u);
  EXPECT_EQ(c.max_dim(), 2u);
  EXPECT_EQ(c.relations().size(), 5u);  // origin<ray x2, origin<quad, ray<quad x2
}

TEST(Complex, MissingOriginDetected) {
  Poic ray = Poic::closed_orthant(1);
  std::vector<Relation> rel = {{0, 2, M({{1}, {0}})}, {1, 2, M({{0}, {1}})}};
  try {
    PoicComplex::make({ray, ray, Poic::closed_orthant(2)}, rel);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingFace);
  }
}

TEST(Complex, NonFunctorialCompositionDetected) {
  auto c = face_complex(Poic::closed_orthant(3));
  auto rel = c.relations();
  std::size_t top = c.cones_of_dim(3).at(0);
  // Redirect one ray -> top map to a different (still valid) coordinate axis.
  for (auto& r : rel)
    if (r.upper == top && c.dim(r.lower) == 1) {
      IntMatrix other(3, 1);
      for (std::size_t i = 0; i < 3; ++i)
        if (r.matrix(i, 0) == 0) {
          other(i, 0) = 1;
          break;
        }
      r.matrix = other;
      break;
    }
  try {
    PoicComplex::make(c.cones(), rel);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFunctorial);
  }
}

TEST(Complex, SkeletonOfQuadrant) {
  auto c = face_complex(Poic::closed_orthant(2));
  auto s = skeleton(c, 1);
  EXPECT_EQ(s.complex.size(), 3u);
  EXPECT_EQ(skeleton(c, 5).complex.size(), 4u);
}

TEST(Complex, Products) {
  auto open = PoicComplex::make({Poic::open_orthant(1)}, {});
  auto p = product_complex(open, open);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_TRUE(same_cone(p.cone(0), Poic::open_orthant(2)));
  auto ray = face_complex(Poic::closed_orthant(1));          // 2 cones
  auto rays3 = skeleton(face_complex(Poic::closed_orthant(2)), 1).complex;  // 3 cones
  EXPECT_EQ(product_complex(ray, rays3).size(), 6u);
}

TEST(Complex, Star1) {
  auto c = face_complex(Poic::closed_orthant(2));
  std::size_t origin = c.cones_of_dim(0).at(0);
  EXPECT_EQ(star1(c, origin).size(), 2u);
  for (std::size_t r : c.cones_of_dim(1)) EXPECT_EQ(star1(c, r).size(), 1u);
}

TEST(Complex, ConifyPoint) {
  PolyhedralComplex pc;
  pc.ambient_dim = 1;
  pc.cells.push_back({{Q({0})}, {}});
  auto lc = conify(pc);
  ASSERT_EQ(lc.complex.size(), 2u);
  EXPECT_EQ(lc.complex.dim(1), 1u);
  EXPECT_EQ(lc.linear.maps[1], M({{0}, {1}}));
}

TEST(Complex, ConifySegment) {
  PolyhedralComplex pc;
  pc.ambient_dim = 1;
  pc.cells.push_back({{Q({0})}, {}});
  pc.cells.push_back({{Q({1})}, {}});
  pc.cells.push_back({{Q({0}), Q({1})}, {}});
  auto lc = conify(pc);
  EXPECT_EQ(lc.complex.size(), 4u);
  EXPECT_TRUE(lc.complex.cone(3).is_closed());
  auto sliced = slice_at_height_one(lc);
  ASSERT_EQ(sliced.cells.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    auto expect = canonical_polyhedron(1, pc.cells[i]);
    EXPECT_EQ(sliced.cells[i].vertices, expect.vertices);
    EXPECT_EQ(sliced.cells[i].rays, expect.rays);
  }
}

TEST(Complex, ConifyTropicalLine) {
  auto lc = conify(tropical_line());
  EXPECT_EQ(lc.complex.size(), 5u);
  EXPECT_EQ(lc.complex.cones_of_dim(2).size(), 3u);
  EXPECT_EQ(lc.complex.cones_of_dim(1).size(), 1u);
  // The cones over unbounded cells keep the origin but drop their recession ray.
  for (std::size_t p : lc.complex.cones_of_dim(2)) {
    EXPECT_FALSE(lc.complex.cone(p).representable_by_halfspaces());
    EXPECT_EQ(lc.complex.cone(p).faces().size(), 3u);
  }
}

TEST(Complex, ConifyRejectsMissingFaces) {
  PolyhedralComplex pc;
  pc.ambient_dim = 1;
  pc.cells.push_back({{Q({0}), Q({1})}, {}});
  try {
    conify(pc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPolyhedralComplex);
  }
}

TEST(Complex, SkeletonizeIdentityOnPosets) {
  ThinCategory cat;
  cat.objects = {Poic::point(), Poic::closed_orthant(1)};
  cat.morphisms = {{0, 1, IntMatrix(1, 0)}};
  auto s = skeletonize(cat);
  EXPECT_EQ(s.complex.size(), 2u);
}

TEST(Complex, SkeletonizeMergesIsomorphicRays) {
  ThinCategory cat;
  cat.objects = {Poic::point(), Poic::closed_orthant(1), Poic::closed_orthant(1)};
  cat.morphisms = {{0, 1, IntMatrix(1, 0)}, {0, 2, IntMatrix(1, 0)}, {1, 2, M({{1}})}, {2, 1, M({{1}})}};
  auto s = skeletonize(cat);
  EXPECT_EQ(s.complex.size(), 2u);
  EXPECT_EQ(s.representative[1], s.representative[2]);
}

TEST(Complex, SkeletonizeRejectsNonThin) {
  ThinCategory cat;
  cat.objects = {Poic::closed_orthant(1), Poic::closed_orthant(2)};
  cat.morphisms = {{0, 1, M({{1}, {0}})}, {0, 1, M({{0}, {1}})}};
  try {
    skeletonize(cat);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotThin);
  }
}

TEST(Complex, LinearStructureNaturality) {
  auto c = face_complex(Poic::closed_orthant(2));
  LinearStructure x;
  x.target_rank = 2;
  std::size_t top = c.cones_of_dim(2).at(0);
  for (std::size_t p = 0; p < c.size(); ++p) x.maps.push_back(c.face_map(p, top));
  EXPECT_NO_THROW(check_linear_structure(c, x));
  x.maps[top] = M({{2, 0}, {0, 1}});
  EXPECT_THROW(check_linear_structure(c, x), Error);
}
