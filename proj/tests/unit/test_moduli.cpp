#include <gtest/gtest.h>

#include "test_util.hpp"
#include "tropocone/error.hpp"
#include "tropocone/moduli.hpp"
#include "tropocone/weights.hpp"

using namespace tropocone;
using tropocone::testing::V;

namespace {

std::vector<Label> labels(std::size_t n) {
  std::vector<Label> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(std::to_string(i));
  return out;
}

std::size_t forest_count(const DiscreteGraph& g) {
  std::size_t c = 0;
  for (unsigned mask = 0; mask < (1u << g.edge_count()); ++mask) {
    std::vector<std::size_t> k;
    for (std::size_t e = 0; e < g.edge_count(); ++e)
      if (mask >> e & 1) k.push_back(e);
    if (is_forest(g, k)) ++c;
  }
  return c;
}

}  // namespace

TEST(Distance, SplitVectorsOfFourMarks) {
  DistanceStructure d(labels(4));
  // Pairs in order 12 13 14 23 24 34; v_I marks the pairs separated by I.
  EXPECT_EQ(d.split_vector({0, 1}), V({0, 1, 1, 1, 1, 0}));
  EXPECT_EQ(d.split_vector({0, 2}), V({1, 0, 1, 1, 0, 1}));
  EXPECT_EQ(d.split_vector({0, 3}), V({1, 1, 0, 0, 1, 1}));
  Vec sum = add(add(d.split_vector({0, 1}), d.split_vector({0, 2})), d.split_vector({0, 3}));
  EXPECT_EQ(sum, V({2, 2, 2, 2, 2, 2}));
  auto cert = solve_integer(d.m_a(), sum);
  ASSERT_TRUE(cert.has_value());
  EXPECT_EQ(d.m_a() * *cert, sum);
  EXPECT_EQ(d.rank(), 2u);
  EXPECT_EQ(d.splits().size(), 3u);
  EXPECT_TRUE(is_zero(d.coordinates(sum)));
}

TEST(Distance, RanksAndErrors) {
  EXPECT_EQ(DistanceStructure(labels(3)).rank(), 0u);
  EXPECT_EQ(DistanceStructure(labels(5)).splits().size(), 10u);
  EXPECT_EQ(DistanceStructure(labels(5)).rank(), 5u);
  try {
    DistanceStructure d(labels(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooFewMarks);
  }
}

TEST(Distance, ForgetMapIsNatural) {
  DistanceStructure d5({"1", "2", "3", "4", "a"}), d4(labels(4));
  IntMatrix L = forget_distance_map(d5, d4);
  // Forgetting a on a tree where a hangs alone on a leaf edge kills that edge.
  for (const auto& I : d5.splits()) {
    Vec v = d5.split_vector(I);
    std::vector<std::size_t> rest;
    for (std::size_t i : I)
      if (i != 4) rest.push_back(i);
    Vec expected = rest.size() == 2 ? d4.coordinates(d4.split_vector(rest)) : Vec(d4.rank(), Int(0));
    EXPECT_EQ(L * d5.coordinates(v), expected);
  }
}

TEST(Moduli, RationalFourMarks) {
  Moduli m = build_moduli(0, labels(4));
  ASSERT_TRUE(m.rational.has_value());
  const PoicComplex& c = m.rational->complex;
  EXPECT_EQ(c.size(), 4u);
  EXPECT_EQ(c.cones_of_dim(1).size(), 3u);
  EXPECT_EQ(c.cones_of_dim(0).size(), 1u);
  WeightLattice w = minkowski_basis(*m.rational, 1);
  ASSERT_EQ(w.rank(), 1u);
  Int s = w.basis[0].at(w.cones[0]);
  for (std::size_t p : w.cones) EXPECT_EQ(w.basis[0].at(p), s);
  EXPECT_TRUE(s == 1 || s == -1);
}

TEST(Moduli, RationalFiveMarksIrreducible) {
  Moduli m = build_moduli(0, labels(5));
  EXPECT_EQ(m.rational->complex.cones_of_dim(2).size(), 15u);
  EXPECT_EQ(m.rational->complex.cones_of_dim(1).size(), 10u);
  WeightLattice w = minkowski_basis(*m.rational, 2);
  ASSERT_EQ(w.rank(), 1u);
  Int s = w.basis[0].at(w.cones[0]);
  EXPECT_TRUE(s == 1 || s == -1);
  for (std::size_t p : w.cones) EXPECT_EQ(w.basis[0].at(p), s);
  EXPECT_TRUE(is_irreducible(*m.rational));
}

TEST(Moduli, GenusOneTwoMarks) {
  Moduli m = build_moduli(1, labels(2));
  EXPECT_EQ(m.space.classes().size(), 3u);
  auto k = m.category.find(DiscreteGraph::from_incidence(2, {{0, 1}, {0, 1}}, {{"1", 0}, {"2", 1}}));
  ASSERT_TRUE(k.has_value());
  auto aut = m.space.automorphisms(*k);
  ASSERT_EQ(aut.size(), 2u);
  bool has_swap = false;
  for (std::size_t a : aut) has_swap = has_swap || m.space.morphism(a).matrix == tropocone::testing::M({{0, 1}, {1, 0}});
  EXPECT_TRUE(has_swap);
  SpaceReport r = validate_space(m.space);
  EXPECT_TRUE(r.valid()) << (r.violations.empty() ? "" : r.violations.front());
}

TEST(Moduli, GenusTwoSpaces) {
  Moduli m = build_moduli(2, {});
  EXPECT_EQ(m.space.classes().size(), 3u);
  auto theta = m.category.find(DiscreteGraph::from_incidence(2, {{0, 1}, {0, 1}, {0, 1}}, {}));
  ASSERT_TRUE(theta.has_value());
  EXPECT_EQ(m.space.automorphisms(*theta).size(), 6u);  // edge permutations
  EXPECT_TRUE(validate_space(m.space).valid());
  Moduli m21 = build_moduli(2, labels(1));
  EXPECT_EQ(m21.space.classes().size(), 7u);
  SpaceReport r = validate_space(m21.space);
  EXPECT_TRUE(r.valid()) << (r.violations.empty() ? "" : r.violations.front());
  // Retained faces of each cone of metrics are the forests of its graph.
  for (std::size_t i = 0; i < m21.category.objects.size(); ++i)
    EXPECT_EQ(m21.space.object(i).retained_faces().size(), forest_count(m21.category.objects[i]));
}

TEST(Moduli, FaceEmbeddingsCompose) {
  Moduli m = build_moduli(1, labels(2));
  for (const auto& f : m.category.morphisms)
    for (const auto& h : m.category.morphisms) {
      if (h.source != f.target) continue;
      // f: G -> H then h: H -> K; the composite contraction has edge map f.edge_map o h.edge_map.
      GraphMorphism c{f.source, h.target, {}, {}};
      for (std::size_t e : h.edge_map) c.edge_map.push_back(f.edge_map[e]);
      EXPECT_EQ(contraction_matrix(m.category, c),
                contraction_matrix(m.category, f) * contraction_matrix(m.category, h));
    }
}
