#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropocone/complex.hpp"
#include "tropocone/space.hpp"
#include "tropocone/subdivide.hpp"
#include "tropocone/weights.hpp"

namespace tropocone {

// A morphism pi : Phi -> X from a poic-complex to a poic-space.  Cone p goes
// to object object_map[p] through the square unimodular matrix transform[p]
// (N^p -> N^{pi(p)}); a face relation p < q goes to the target morphism
// relation_map[{p, q}], determined by naturality.
struct Fibration {
  PoicComplex source;
  std::optional<LinearStructure> linear;
  PoicSpace target;
  std::vector<std::size_t> object_map;
  std::vector<IntMatrix> transform;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> relation_map;

  LinearComplex linear_complex() const;  // throws Unsupported without a linear structure
};

// Derives the morphism map: for p < q the target morphism with matrix
// transform[q] * face_map(p, q) * transform[p]^{-1}.  Throws InvalidFibration
// when a transform is not unimodular or a relation has no image.
Fibration make_fibration(PoicComplex source, std::optional<LinearStructure> linear, PoicSpace target,
                         std::vector<std::size_t> object_map, std::vector<IntMatrix> transform);

struct FibrationReport {
  bool essentially_surjective = true;  // every isomorphism class of the target is hit
  bool interiors = true;                // transforms identify the cones up to their boundaries
  bool lifting = true;                  // every target morphism out of pi(p) lifts
  // Per (p, target morphism f out of pi(p)): number of lifts (q, g).
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> lift_counts;
  std::vector<std::string> violations;
  bool valid() const { return essentially_surjective && interiors && lifting; }
};
FibrationReport validate_fibration(const Fibration& fib);

// The identity fibration of a complex over its own poic-space.
Fibration identity_fibration(const LinearComplex& lc);
Fibration identity_fibration(const PoicComplex& phi);

// Closed pieces of S over source cone p, each with its source cone, in the
// coordinates of p.
struct Piece {
  std::size_t cone = 0;  // cone of S.source
  ClosedCone closure;
};
std::vector<Piece> pieces_of(const Subdivision& s, std::size_t p);

// One stability condition: an isomorphism f : pi(p) -> pi(q) of the target.
struct StabilityTriple {
  std::size_t p = 0;
  std::size_t q = 0;
  std::size_t morphism = 0;
};

struct CompatibilityReport {
  bool compatible = true;
  std::vector<StabilityTriple> triples;  // every triple that was tested
  // b_f: piece of S over p -> piece over q with the same transported closure.
  std::vector<std::map<std::size_t, std::size_t>> bijections;
  std::string witness;
};
// The subdivision S of fib.source is compatible when, for every triple, the
// pieces over p transported by X(f) * transform[p] are those over q
// transported by transform[q].  All triples are tested.
CompatibilityReport check_compatibility(const Fibration& fib, const Subdivision& s);

// A refinement S' of S with S o S' compatible.  Already compatible
// subdivisions are returned with S' the identity.  Pieces are symmetrized
// class by class in increasing dimension: transported into a representative,
// overlaid, and transported back; when the overlay would cut an already fixed
// boundary, each cone is first re-coned from the centre of the representative
// over its refined boundary.  Throws NotPure, or Unsupported when the result
// is not a subdivision (possible for non-pointed closures).
struct CompatibleRefinement {
  Subdivision composite;  // S o S'
  Subdivision relative;   // S'
};
CompatibleRefinement compatible_refinement(const Fibration& fib, const Subdivision& s);

// Balanced k-weights on S.source (with the pulled back linear structure)
// that are invariant under every b_f.  Throws NotCompatible.
struct EquivariantWeightLattice {
  std::size_t k = 0;
  WeightLattice lattice;
  std::vector<std::pair<std::size_t, std::size_t>> equal_pairs;  // generators of the b_f constraints
  std::size_t rank() const { return lattice.rank(); }
};
EquivariantWeightLattice equivariant_basis(const Fibration& fib, std::size_t k, const Subdivision& s);

struct EquivarianceReport {
  bool balanced = false;
  bool invariant = false;
  std::string witness;
  bool equivariant() const { return balanced && invariant; }
};
// Throws NotCompatible.
EquivarianceReport check_equivariant(const Fibration& fib, const Subdivision& s, const Weight& w);

// A morphism of poic-spaces X -> Y on objects with per-object matrices
// N^x -> N^{F(x)}.
struct SpaceMap {
  std::vector<std::size_t> object_map;
  std::vector<IntMatrix> transform;
};
// Target morphism n with Y(n) * transform[x] = transform[x'] * X(m), if any.
std::optional<std::size_t> map_morphism(const PoicSpace& x, const PoicSpace& y, const SpaceMap& f, std::size_t m);

struct FibrationMorphism {
  ComplexMorphism complex_part;
  std::optional<IntMatrix> integral;  // N_X -> N_Y, when the linear structures are compatible
  SpaceMap space_part;
};
// Empty on success.  Checks the complex part, the space part (every morphism
// of X has an image), the integral part against the linear structures, and
// that the square commutes up to an isomorphism of Y.
std::string check_fibration_morphism(const Fibration& from, const Fibration& to, const FibrationMorphism& f);

// Product fibration over the product space.  Cone (i, j) has id
// i * |psi| + j, object (x, y) has id x * |Y| + y.
PoicSpace product_space(const PoicSpace& x, const PoicSpace& y);
Fibration product_fibration(const Fibration& a, const Fibration& b);

// Pushes an equivariant k-weight on S.source through f^c o S, onto a
// (f^c o S)-fine subdivision T of to.source (computed when absent), then pulls
// it back along a refinement T' making T o T' compatible.  Throws NotPFine or
// NotCompatible when a precondition fails, and InvalidFibration when the
// composite is not weakly proper.
struct FibrationPushforward {
  Subdivision fine;        // T
  Subdivision compatible;  // T o T'
  Weight on_fine;          // pushforward on T.source
  Weight weight;           // on (T o T').source
  bool equivariant = false;
};
FibrationPushforward fibration_pushforward(const Fibration& from, const Fibration& to, const FibrationMorphism& f,
                                           const Subdivision& s, const Weight& w,
                                           const std::optional<Subdivision>& t = std::nullopt);

}  // namespace tropocone
