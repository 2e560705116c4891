#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropocone/poic.hpp"

namespace tropocone {

using Label = std::string;
// Flag map of a graph morphism: flag of the source -> flag of the target.
using FlagMap = std::vector<std::size_t>;

// A discrete graph with legs: a finite set of flags with a root map r whose
// image is the set of vertices, and an involution i with i(r(h)) = r(h).
// Legs are the non-vertex fixed points of i, edges its 2-cycles.  The marking
// is a bijection from labels onto the legs.
class DiscreteGraph {
 public:
  DiscreteGraph() = default;

  // Throws BadInvolution, BadRootCompatibility or MarkingNotBijective.
  static DiscreteGraph make(std::vector<std::size_t> root, std::vector<std::size_t> involution,
                            std::map<Label, std::size_t> marking);
  // Flags laid out as: vertices, then the two halves of every edge (the half
  // at the first endpoint first), then the legs in the given order.
  static DiscreteGraph from_incidence(std::size_t vertices,
                                      const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                      const std::vector<std::pair<Label, std::size_t>>& legs);

  std::size_t flag_count() const { return root_.size(); }
  std::size_t root(std::size_t f) const { return root_[f]; }
  std::size_t involution(std::size_t f) const { return inv_[f]; }
  const std::vector<std::size_t>& roots() const { return root_; }
  const std::vector<std::size_t>& involutions() const { return inv_; }
  const std::map<Label, std::size_t>& marking() const { return marking_; }

  // Vertex flags in increasing order; vertex i is vertices()[i].
  const std::vector<std::size_t>& vertices() const { return vertices_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  // Edges as flag pairs (smaller flag first), ordered by the smaller flag.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  // Leg flags in increasing order.
  const std::vector<std::size_t>& legs() const { return legs_; }

  // Index of the vertex r(f).
  std::size_t vertex_of(std::size_t f) const { return vertex_index_[root_[f]]; }
  // Index of the edge containing the flag f, if any.
  std::optional<std::size_t> edge_of(std::size_t f) const;
  std::pair<std::size_t, std::size_t> endpoints(std::size_t e) const {
    return {vertex_of(edges_[e].first), vertex_of(edges_[e].second)};
  }
  bool is_loop(std::size_t e) const { return endpoints(e).first == endpoints(e).second; }
  // #r^{-1}(V) - 1: every half-edge and leg at V, a loop counting twice.
  std::size_t valency(std::size_t v) const;
  long genus() const { return long(edges_.size()) - long(vertices_.size()) + 1; }
  bool is_connected() const;
  std::optional<Label> label_of(std::size_t f) const;
  std::size_t leg(const Label& a) const { return marking_.at(a); }

  std::string to_string() const;

 private:
  std::vector<std::size_t> root_, inv_;
  std::map<Label, std::size_t> marking_;
  std::vector<std::size_t> vertices_, legs_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::size_t> vertex_index_;  // flag -> vertex index (vertex flags only)
  std::vector<std::size_t> edge_index_;    // flag -> edge index, or npos
};

// Vertex/edge/leg view: vertex i is the i-th vertex flag, edges in edge order
// with endpoints in flag order, legs in flag order.
struct Incidence {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::pair<Label, std::size_t>> legs;
};
Incidence incidence(const DiscreteGraph& g);

// G/K for a set K of edges without circuits; the surviving edges keep their
// relative order.  Throws LoopContraction when K contains a circuit.
DiscreteGraph contract_edges(const DiscreteGraph& g, const std::vector<std::size_t>& edges);
DiscreteGraph contract(const DiscreteGraph& g, std::size_t e);
// Edges of g not in K, in order: edge i of G/K is edge surviving_edges(...)[i] of G.
std::vector<std::size_t> surviving_edges(const DiscreteGraph& g, const std::vector<std::size_t>& contracted);

bool is_forest(const DiscreteGraph& g, const std::vector<std::size_t>& edges);
// Circuits (edge sets of simple cycles, loops included), each sorted.
std::vector<std::vector<std::size_t>> circuits(const DiscreteGraph& g);

// All marking-preserving isomorphisms a -> b as flag maps.
std::vector<FlagMap> isomorphisms(const DiscreteGraph& a, const DiscreteGraph& b);
std::optional<FlagMap> find_isomorphism(const DiscreteGraph& a, const DiscreteGraph& b);
// Edge e of a -> edge of b under a flag map.
std::vector<std::size_t> edge_map(const DiscreteGraph& a, const DiscreteGraph& b, const FlagMap& f);

struct CanonicalForm {
  DiscreteGraph graph;               // canonical representative
  std::string key;                   // equal iff isomorphic as marked graphs
  FlagMap to_canonical;              // an isomorphism onto the representative
  std::vector<FlagMap> automorphisms;  // flag permutations of the input
};
CanonicalForm canonical_form(const DiscreteGraph& g);
std::string canonical_key(const DiscreteGraph& g);

// A contraction source -> target: the source edges contracted and, for every
// target edge, the source edge it comes from.
struct GraphMorphism {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::size_t> contracted;
  std::vector<std::size_t> edge_map;
};

// The category of connected genus-g graphs with legs marked by A and all
// vertices at least trivalent, with contractions as morphisms.  Morphisms
// with the same edge map are identified (they induce the same face map of
// cones of metrics).
struct GraphCategory {
  std::size_t genus = 0;
  std::vector<Label> marks;
  std::vector<DiscreteGraph> objects;  // canonical representatives
  std::vector<std::string> keys;
  std::vector<std::vector<FlagMap>> automorphisms;
  std::vector<GraphMorphism> morphisms;  // includes identities and automorphisms

  // Objects with 3g - 3 + #A edges (all vertices trivalent).
  std::vector<std::size_t> maximal() const;
  std::optional<std::size_t> find(const DiscreteGraph& g) const;
  std::vector<std::size_t> hom(std::size_t source, std::size_t target) const;
};

// Label of the i-th (1-based) pair of legs joined into a non-tree edge.
Label loop_leg_label(std::size_t i, bool star);

// All trivalent trees with legs marked by `marks` (#marks >= 3), one per
// labelled isomorphism class.
std::vector<DiscreteGraph> trivalent_trees(const std::vector<Label>& marks);

// Throws UnstableParameters unless 2g + #A - 2 > 0.
GraphCategory enumerate_category(std::size_t g, const std::vector<Label>& marks);

// The graph obtained from a tree marked by A and the loop-leg labels 1..g by
// joining the legs i and i* into an edge e_i.  Same flags and root map.
struct SpanningTreeGraph {
  DiscreteGraph graph;
  std::vector<std::size_t> tree_edge;  // edge of the tree -> edge of the graph
  std::vector<std::size_t> loop_edge;  // i - 1 -> edge e_i of the graph
};
SpanningTreeGraph join_loop_legs(const DiscreteGraph& tree, std::size_t g);

// Forgetting the leg marked a (the three vertex cases).  eta maps edge-length
// coordinates of g to those of the result.  Throws UnstableAfterForgetting
// when the vertex of a is trivalent and carries a loop.
struct ForgetResult {
  DiscreteGraph graph;
  IntMatrix eta;  // #E(result) x #E(g)
  enum class Case { HighValency, TwoEdges, ExtraLeg } kind = Case::HighValency;
  std::optional<Label> other_leg;  // label of the remaining leg in the extra-leg case
  std::optional<std::size_t> removed_edge;  // edge of g removed in the extra-leg case
};
ForgetResult forget_leg(const DiscreteGraph& g, const Label& a);

// Clutching at c: the vertices of the c-legs are identified and both c-legs
// removed.  Edges of the result are those of a followed by those of b.
DiscreteGraph clutch(const DiscreteGraph& a, const DiscreteGraph& b, const Label& c);

// The cone of metrics: the closed orthant on E(G) with one strict inequality
// sum_{e in C} x_e > 0 per circuit C.
Poic cone_of_metrics(const DiscreteGraph& g);

}  // namespace tropocone
