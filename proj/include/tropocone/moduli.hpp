#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tropocone/complex.hpp"
#include "tropocone/graphs.hpp"
#include "tropocone/linalg.hpp"
#include "tropocone/space.hpp"

namespace tropocone {

// Distance coordinates of rational tropical curves with marks A.  A metric
// tree maps to its vector of leg-to-leg distances in Z^{pairs}; modulo the
// image of M_A : Z^A -> Z^{pairs}, a -> (a_i + a_j), an edge with leg split
// I | A \ I contributes its length times v_I, the indicator of the pairs
// separated by I.  Coordinates live on the free part of the cokernel of M_A,
// re-expressed in a basis of the lattice spanned by the v_I.
class DistanceStructure {
 public:
  // Throws TooFewMarks if #A < 3.
  explicit DistanceStructure(std::vector<Label> marks);

  const std::vector<Label>& marks() const { return marks_; }
  // Unordered pairs (i < j) of mark indices, in lexicographic order.
  const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }
  const IntMatrix& m_a() const { return m_a_; }  // #pairs x #A
  // Rank of the lattice N_dist spanned by the split vectors.
  std::size_t rank() const { return basis_.rows(); }
  // Rows: basis of N_dist in free cokernel coordinates.
  const IntMatrix& basis() const { return basis_; }
  const QuotientPresentation& cokernel() const { return coker_; }

  // Splits: subsets I with 2 <= #I <= #A - 2 containing the first mark, as
  // sorted index lists.
  const std::vector<std::vector<std::size_t>>& splits() const { return splits_; }
  // v_I in Z^{pairs} (I given by mark indices; the complement gives the same vector).
  Vec split_vector(const std::vector<std::size_t>& I) const;
  // N_dist coordinates of a vector of Z^{pairs} whose class lies in N_dist.
  Vec coordinates(const Vec& x) const;
  // Leg split of every edge of a tree marked by A (the side containing the first mark).
  std::vector<std::vector<std::size_t>> edge_splits(const DiscreteGraph& tree) const;
  // rank x #E(tree): column e is the coordinate vector of v_{I(e)}.
  IntMatrix tree_matrix(const DiscreteGraph& tree) const;
  std::size_t mark_index(const Label& a) const;

 private:
  std::vector<Label> marks_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  IntMatrix m_a_;
  QuotientPresentation coker_;
  IntMatrix basis_;
  std::vector<std::vector<std::size_t>> splits_;
};

// Lattice map N_dist(A) -> N_dist(A \ {a}) induced by dropping the pairs that involve a.
IntMatrix forget_distance_map(const DistanceStructure& from, const DistanceStructure& to);

// M^trop_{g,A} on the enumerated category: object i carries the cone of metrics
// of category.objects[i]; a contraction G -> H gives the face embedding
// sigma_H -> sigma_G sending edge e of H to the edge of G it comes from.
struct Moduli {
  std::size_t genus = 0;
  std::vector<Label> marks;
  GraphCategory category;
  PoicSpace space;
  // Genus zero: the same data as a linear poic-complex with distance coordinates.
  std::optional<LinearComplex> rational;
  std::optional<DistanceStructure> distance;
};

// Throws UnstableParameters.
Moduli build_moduli(std::size_t g, const std::vector<Label>& marks);

// Face embedding of a contraction morphism (#E(target) columns into Z^{E(source)}).
IntMatrix contraction_matrix(const GraphCategory& c, const GraphMorphism& m);

}  // namespace tropocone
