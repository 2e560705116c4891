#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "test_util.hpp"
#include "tropocone/error.hpp"
#include "tropocone/graphs.hpp"

using namespace tropocone;
using tropocone::testing::V;

namespace {

DiscreteGraph theta() { return DiscreteGraph::from_incidence(2, {{0, 1}, {0, 1}, {0, 1}}, {}); }
DiscreteGraph two_cycle() { return DiscreteGraph::from_incidence(2, {{0, 1}, {0, 1}}, {{"1", 0}, {"2", 1}}); }
DiscreteGraph figure_eight() { return DiscreteGraph::from_incidence(1, {{0, 0}, {0, 0}}, {}); }

// Brute force: flag permutations commuting with root and involution and fixing legs.
std::size_t brute_automorphisms(const DiscreteGraph& g) {
  std::vector<std::size_t> p(g.flag_count());
  std::iota(p.begin(), p.end(), 0);
  std::size_t count = 0;
  do {
    bool ok = true;
    for (std::size_t f = 0; f < p.size() && ok; ++f)
      ok = p[g.root(f)] == g.root(p[f]) && p[g.involution(f)] == g.involution(p[f]);
    for (const auto& [a, f] : g.marking()) ok = ok && p[f] == f;
    if (ok) ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

// Random flag relabelling of g.
DiscreteGraph shuffled(const DiscreteGraph& g, std::mt19937& rng) {
  std::vector<std::size_t> p(g.flag_count());
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  std::vector<std::size_t> root(p.size()), inv(p.size());
  for (std::size_t f = 0; f < p.size(); ++f) {
    root[p[f]] = p[g.root(f)];
    inv[p[f]] = p[g.involution(f)];
  }
  std::map<Label, std::size_t> marking;
  for (const auto& [a, f] : g.marking()) marking[a] = p[f];
  return DiscreteGraph::make(root, inv, marking);
}

// Number of sets of n-3 pairwise compatible non-trivial splits of {0..n-1}
// (the combinatorial types of trivalent trees).
std::size_t compatible_split_systems(std::size_t n) {
  std::vector<unsigned> splits;  // subsets not containing 0, size in [2, n-2]
  for (unsigned s = 1; s < (1u << n); ++s) {
    if (s & 1u) continue;
    int c = __builtin_popcount(s);
    if (c >= 2 && c <= int(n) - 2) splits.push_back(s);
  }
  const unsigned all = (1u << n) - 1;
  auto compatible = [&](unsigned a, unsigned b) {
    return (a & b) == 0 || (a & ~b) == 0 || (b & ~a) == 0 || ((all & ~a) & (all & ~b)) == 0;
  };
  std::size_t count = 0;
  std::vector<unsigned> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (chosen.size() == n - 3) {
      ++count;
      return;
    }
    for (std::size_t j = i; j < splits.size(); ++j) {
      bool ok = true;
      for (unsigned c : chosen) ok = ok && compatible(c, splits[j]);
      if (!ok) continue;
      chosen.push_back(splits[j]);
      rec(j + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return count;
}

std::vector<Label> labels(std::size_t n) {
  std::vector<Label> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(std::to_string(i));
  return out;
}

}  // namespace

TEST(Graphs, ValidationErrors) {
  EXPECT_THROW(DiscreteGraph::make({0, 0}, {1, 0}, {}), Error);  // moves a vertex
  try {
    DiscreteGraph::make({0, 0, 0}, {0, 2, 2}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadInvolution);
  }
  try {
    DiscreteGraph::make({0, 2, 0}, {0, 1, 2}, {});  // root of flag 1 is not a vertex
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadRootCompatibility);
  }
  try {
    DiscreteGraph::make({0, 0, 0}, {0, 1, 2}, {{"a", 1}});  // leg 2 unlabelled
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MarkingNotBijective);
  }
}

TEST(Graphs, ThetaBasics) {
  DiscreteGraph t = theta();
  EXPECT_EQ(t.vertex_count(), 2u);
  EXPECT_EQ(t.edge_count(), 3u);
  EXPECT_EQ(t.genus(), 2);
  EXPECT_EQ(t.valency(0), 3u);
  EXPECT_TRUE(t.is_connected());
  DiscreteGraph c = contract(t, 0);
  EXPECT_EQ(c.vertex_count(), 1u);
  EXPECT_EQ(c.edge_count(), 2u);
  EXPECT_TRUE(c.is_loop(0) && c.is_loop(1));
  EXPECT_EQ(canonical_key(c), canonical_key(figure_eight()));
  EXPECT_EQ(circuits(t).size(), 3u);
  try {
    contract(c, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LoopContraction);
  }
  EXPECT_THROW(contract_edges(t, {0, 1}), Error);
}

TEST(Graphs, AutomorphismCountsMatchBruteForce) {
  DiscreteGraph tree = DiscreteGraph::from_incidence(2, {{0, 1}}, {{"1", 0}, {"2", 0}, {"3", 1}, {"4", 1}});
  EXPECT_EQ(isomorphisms(theta(), theta()).size(), 12u);
  EXPECT_EQ(isomorphisms(two_cycle(), two_cycle()).size(), 2u);  // the edge swap
  EXPECT_EQ(isomorphisms(tree, tree).size(), 1u);
  EXPECT_EQ(isomorphisms(figure_eight(), figure_eight()).size(), 8u);
  for (const auto& g : {theta(), two_cycle(), tree, figure_eight()})
    EXPECT_EQ(isomorphisms(g, g).size(), brute_automorphisms(g)) << g.to_string();
}

TEST(Graphs, CanonicalKeyInvariantUnderRelabelling) {
  std::mt19937 rng(7);
  std::vector<DiscreteGraph> gs = {theta(), two_cycle(), figure_eight()};
  for (const auto& t : trivalent_trees(labels(6))) gs.push_back(t);
  for (const auto& g : gs) {
    for (int k = 0; k < 5; ++k) {
      DiscreteGraph h = shuffled(g, rng);
      EXPECT_EQ(canonical_key(g), canonical_key(h));
      auto f = find_isomorphism(g, h);
      ASSERT_TRUE(f.has_value());
      CanonicalForm cf = canonical_form(h);
      EXPECT_EQ(cf.graph.to_string(), canonical_form(g).graph.to_string());
      EXPECT_EQ(cf.automorphisms.size(), isomorphisms(g, g).size());
    }
  }
  // Swapping two labels of a tree gives a different marked graph.
  DiscreteGraph a = DiscreteGraph::from_incidence(2, {{0, 1}}, {{"1", 0}, {"2", 0}, {"3", 1}, {"4", 1}});
  DiscreteGraph b = DiscreteGraph::from_incidence(2, {{0, 1}}, {{"1", 0}, {"3", 0}, {"2", 1}, {"4", 1}});
  EXPECT_NE(canonical_key(a), canonical_key(b));
  EXPECT_FALSE(find_isomorphism(a, b).has_value());
}

TEST(Graphs, TrivalentTreeCounts) {
  for (std::size_t n = 3; n <= 7; ++n) {
    auto trees = trivalent_trees(labels(n));
    std::size_t dfact = 1;
    for (std::size_t k = 3; k + 2 <= 2 * n - 3; k += 2) dfact *= k;  // (2n-5)!!
    EXPECT_EQ(trees.size(), dfact) << n;
    std::set<std::string> keys;
    for (const auto& t : trees) keys.insert(canonical_key(t));
    EXPECT_EQ(keys.size(), trees.size());
    if (n >= 4) EXPECT_EQ(trees.size(), compatible_split_systems(n));
  }
}

TEST(Graphs, CategoryCounts) {
  GraphCategory c04 = enumerate_category(0, labels(4));
  EXPECT_EQ(c04.objects.size(), 4u);
  EXPECT_EQ(c04.maximal().size(), 3u);
  GraphCategory c05 = enumerate_category(0, labels(5));
  EXPECT_EQ(c05.maximal().size(), 15u);
  EXPECT_EQ(c05.objects.size(), 26u);  // 15 + 10 + 1
  GraphCategory c12 = enumerate_category(1, labels(2));
  EXPECT_EQ(c12.objects.size(), 3u);
  GraphCategory c21 = enumerate_category(2, labels(1));
  EXPECT_EQ(c21.objects.size(), 7u);
  GraphCategory c20 = enumerate_category(2, {});
  EXPECT_EQ(c20.objects.size(), 3u);
  EXPECT_EQ(c20.maximal().size(), 2u);
  try {
    enumerate_category(0, labels(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnstableParameters);
  }
  EXPECT_THROW(enumerate_category(1, {}), Error);
}

TEST(Graphs, CategoryMorphisms) {
  GraphCategory c = enumerate_category(0, labels(4));
  std::size_t origin = c.objects.size() - 1;
  ASSERT_EQ(c.objects[origin].edge_count(), 0u);
  for (std::size_t t : c.maximal()) {
    EXPECT_EQ(c.hom(t, t).size(), 1u);
    EXPECT_EQ(c.hom(t, origin).size(), 1u);
  }
  // Genus one, two marks: the 2-cycle has exactly one non-trivial automorphism.
  GraphCategory c12 = enumerate_category(1, labels(2));
  auto k = c12.find(two_cycle());
  ASSERT_TRUE(k.has_value());
  EXPECT_EQ(c12.automorphisms[*k].size(), 2u);
  EXPECT_EQ(c12.hom(*k, *k).size(), 2u);
  for (const auto& m : c12.morphisms) {
    DiscreteGraph h = contract_edges(c12.objects[m.source], m.contracted);
    EXPECT_EQ(canonical_key(h), c12.keys[m.target]);
    EXPECT_EQ(m.edge_map.size(), c12.objects[m.target].edge_count());
  }
}

TEST(Graphs, ConeOfMetrics) {
  // 2-cycle: closed quadrant minus the origin.
  Poic a = cone_of_metrics(two_cycle());
  EXPECT_TRUE(a.contains(V({1, 0})));
  EXPECT_FALSE(a.contains(V({0, 0})));
  // Loop with a bridge: bridge length may vanish, loop length may not.
  DiscreteGraph lb = DiscreteGraph::from_incidence(2, {{0, 1}, {1, 1}}, {{"1", 0}, {"2", 0}});
  Poic b = cone_of_metrics(lb);
  EXPECT_TRUE(b.contains(V({0, 1})));
  EXPECT_FALSE(b.contains(V({1, 0})));
  // Trees: the closed orthant.
  DiscreteGraph tree = DiscreteGraph::from_incidence(2, {{0, 1}}, {{"1", 0}, {"2", 0}, {"3", 1}, {"4", 1}});
  EXPECT_TRUE(cone_of_metrics(tree).is_closed());
  // Retained faces are exactly the edge sets whose complement is a forest.
  Poic t = cone_of_metrics(theta());
  for (unsigned mask = 0; mask < 8; ++mask) {
    Vec x(3, Int(0));
    std::vector<std::size_t> zero;
    for (std::size_t e = 0; e < 3; ++e)
      if (mask >> e & 1) x[e] = 1;
      else zero.push_back(e);
    EXPECT_EQ(t.contains(x), is_forest(theta(), zero)) << mask;
  }
}

TEST(Graphs, ForgetLegCases) {
  // High valency.
  DiscreteGraph star = DiscreteGraph::from_incidence(1, {}, {{"1", 0}, {"2", 0}, {"3", 0}, {"a", 0}});
  auto r1 = forget_leg(star, "a");
  EXPECT_EQ(r1.kind, ForgetResult::Case::HighValency);
  EXPECT_EQ(r1.graph.legs().size(), 3u);
  // Two edges: a path u - v - w with a at v merges into one edge of length x + y.
  DiscreteGraph path =
      DiscreteGraph::from_incidence(3, {{0, 1}, {1, 2}}, {{"1", 0}, {"2", 0}, {"a", 1}, {"3", 2}, {"4", 2}});
  auto r2 = forget_leg(path, "a");
  EXPECT_EQ(r2.kind, ForgetResult::Case::TwoEdges);
  EXPECT_EQ(r2.graph.edge_count(), 1u);
  EXPECT_TRUE(r2.eta == tropocone::testing::M({{1, 1}}));
  // Extra leg: the leg b moves to the neighbouring vertex, the edge is dropped.
  DiscreteGraph t = DiscreteGraph::from_incidence(2, {{0, 1}}, {{"1", 0}, {"2", 0}, {"a", 1}, {"b", 1}});
  auto r3 = forget_leg(t, "a");
  EXPECT_EQ(r3.kind, ForgetResult::Case::ExtraLeg);
  EXPECT_EQ(r3.other_leg, Label("b"));
  EXPECT_EQ(r3.graph.edge_count(), 0u);
  EXPECT_EQ(r3.eta.rows(), 0u);
  EXPECT_EQ(r3.eta.cols(), 1u);
  // Loop with the leg: unstable.
  DiscreteGraph lp = DiscreteGraph::from_incidence(1, {{0, 0}}, {{"a", 0}});
  try {
    forget_leg(lp, "a");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnstableAfterForgetting);
  }
}

TEST(Graphs, ClutchingJoinsVertices) {
  DiscreteGraph a = DiscreteGraph::from_incidence(1, {}, {{"1", 0}, {"2", 0}, {"c", 0}});
  DiscreteGraph b = DiscreteGraph::from_incidence(1, {}, {{"3", 0}, {"4", 0}, {"c", 0}});
  DiscreteGraph c = clutch(a, b, "c");
  EXPECT_EQ(c.vertex_count(), 1u);
  EXPECT_EQ(c.legs().size(), 4u);
  EXPECT_EQ(c.edge_count(), 0u);
  DiscreteGraph d = DiscreteGraph::from_incidence(2, {{0, 1}}, {{"1", 0}, {"2", 0}, {"3", 1}, {"c", 1}});
  DiscreteGraph e = DiscreteGraph::from_incidence(1, {}, {{"4", 0}, {"5", 0}, {"c", 0}});
  DiscreteGraph f = clutch(d, e, "c");
  EXPECT_EQ(f.edge_count(), 1u);
  EXPECT_EQ(f.valency(1), 4u);
  try {
    clutch(a, a, "c");
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::BadLabelIntersection);
  }
}

TEST(Graphs, JoinLoopLegs) {
  DiscreteGraph t = DiscreteGraph::from_incidence(1, {}, {{"1", 0}, {loop_leg_label(1, false), 0}, {loop_leg_label(1, true), 0}});
  SpanningTreeGraph st = join_loop_legs(t, 1);
  EXPECT_EQ(st.graph.genus(), 1);
  EXPECT_EQ(st.graph.edge_count(), 1u);
  EXPECT_TRUE(st.graph.is_loop(st.loop_edge[0]));
  EXPECT_EQ(st.graph.legs().size(), 1u);
}
