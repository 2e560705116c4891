#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tropocone/fibration.hpp"
#include "tropocone/graphs.hpp"
#include "tropocone/moduli.hpp"

namespace tropocone {

// st_{g,A}: cone i of the source is sigma_T x R^g_{>0} for the i-th tree T of
// M_{0, A u {1,1*,...,g,g*}}, in coordinates (edges of T, delta_1..delta_g).
// It maps to the genus-g graph obtained by joining the legs i and i* into an
// edge of length delta_i.  The linear structure is the distance map of the
// tree, ignoring the delta coordinates.
struct SpanningTreeFibration {
  std::size_t genus = 0;
  std::vector<Label> marks;
  std::vector<Label> tree_marks;  // marks, then 1, 1*, ..., g, g*
  Moduli trees;                   // M_{0, tree_marks}
  Moduli graphs;                  // M_{g, marks}
  Fibration fibration;

  // Source cone of a tree marked by tree_marks, and the matrix from its
  // coordinates (edges in the order of `tree`, then the deltas) to those of the cone.
  struct Chart {
    std::size_t cone = 0;
    IntMatrix matrix;
  };
  Chart chart(const DiscreteGraph& tree) const;
};

// Throws UnstableParameters unless 2g + #A - 2 > 0.
SpanningTreeFibration spanning_tree_fibration(std::size_t g, const std::vector<Label>& marks);

// The morphism of fibrations st_{g,A} -> st_{g,A \ a} forgetting the leg a:
// on the cone of T the matrix [[eta, 0], [M(T,a), Id]], where M(T,a) adds the
// length of the removed edge to delta_i when a sat next to the leg i or i*.
// Throws UnstableAfterForgetting.
FibrationMorphism forgetful_morphism(const SpanningTreeFibration& from, const SpanningTreeFibration& to,
                                     const Label& a);

struct Forgetful {
  SpanningTreeFibration from;
  SpanningTreeFibration to;
  FibrationMorphism morphism;
};
Forgetful forgetful(std::size_t g, const std::vector<Label>& marks, const Label& a);

// The clutching morphism st_{g,A} x st_{h,B} -> st_{g+h, A delta B} at the
// shared label c: trees and graphs are glued at their c-legs; the loop labels
// n, n* of the right factor become g+n, (g+n)*.  The integral part is the
// distance map K_{A,B} when it is well defined on the distance lattices;
// otherwise integral_obstruction explains why not.
struct Clutching {
  SpanningTreeFibration left;
  SpanningTreeFibration right;
  SpanningTreeFibration target;
  Fibration product;
  FibrationMorphism morphism;
  Label shared;
  std::optional<std::string> integral_obstruction;
};
// Throws BadLabelIntersection unless A and B share exactly one label.
Clutching clutching(std::size_t g, const std::vector<Label>& a, std::size_t h, const std::vector<Label>& b);

}  // namespace tropocone
