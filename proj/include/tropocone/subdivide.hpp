#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tropocone/complex.hpp"
#include "tropocone/weights.hpp"

namespace tropocone {

// A subdivision S : source -> target.  Each source cone p lies over the
// target cone cone_map[p] via the injective matrix matrices[p].
struct Subdivision {
  PoicComplex source;
  PoicComplex target;
  std::vector<std::size_t> cone_map;
  std::vector<IntMatrix> matrices;

  ComplexMorphism morphism() const { return {cone_map, matrices}; }
};

Subdivision identity_subdivision(const PoicComplex& phi);

// Builds a subdivision from closed pieces: pieces[q] lists closed cones in the
// coordinates of target cone q whose relative interiors partition the relative
// interior of q.  Faces of pieces lying in non-retained faces of q are
// dropped; the others are matched with the pieces of the corresponding face
// cone.  Throws InvalidSubdivision when a face has no matching piece.
Subdivision assemble_subdivision(const PoicComplex& target, const std::vector<std::vector<ClosedCone>>& pieces);

// Closed pieces of target cone q: images of the closures of the source cones over q.
std::vector<ClosedCone> pieces_over(const Subdivision& s, std::size_t q);

struct SubdivisionReport {
  bool functorial = true;     // morphism, injective, unimodular in equal dimension
  bool partition = true;      // relative interiors partition every target cone
  bool face_lifting = true;   // every target face relation lifts
  std::vector<std::string> violations;
  bool valid() const { return functorial && partition && face_lifting; }
};
SubdivisionReport validate_subdivision(const Subdivision& s);

// Star subdivision at the primitive ray r (coordinates of cone s) in the
// relative interior of s.  Cones containing s must have pointed closures.
// Throws RayNotInterior or Unsupported.
Subdivision stellar(const PoicComplex& phi, std::size_t s, const Vec& r);

// Barycentric subdivision: per cone, one simplicial piece per chain of
// non-zero closure faces ending at the cone, spanned by the sums of primitive
// ray generators.  Closures must be pointed (Unsupported otherwise).
Subdivision ord_subdivision(const PoicComplex& phi);

// Common refinement of subdivisions of the same complex by pairwise
// intersection, with the refinement maps onto each input's source.
struct Refinement {
  Subdivision common;
  std::vector<ComplexMorphism> to_inputs;
};
Refinement honest_subdivision_refine(const std::vector<Subdivision>& inputs);  // throws AmbientMismatch

// Common refinement of two systems of closed pieces whose relative interiors
// partition the same set: the intersections meeting both relative interiors.
std::vector<ClosedCone> overlay_pieces(const std::vector<ClosedCone>& a, const std::vector<ClosedCone>& b);
// Every face of a closed cone (the cone itself and the apex included).
std::vector<ClosedCone> all_faces(const ClosedCone& c);

// For subdivisions of the same complex with fine refining coarse: the cone
// of coarse.source containing each cone of fine.source, with the lattice map.
// Throws InvalidSubdivision when fine does not refine coarse.
ComplexMorphism refinement_map(const Subdivision& fine, const Subdivision& coarse);
// fine as a subdivision of coarse.source.
Subdivision relative_subdivision(const Subdivision& fine, const Subdivision& coarse);

// Linear structure of the source induced from one on the target.
LinearStructure pullback_linear(const Subdivision& s, const LinearStructure& y);
Weight pullback(const Subdivision& s, const Weight& w);

// The honest form of a subdivision of a linear complex whose maps are
// injective on every cone: the source cones as cones in the ambient lattice.
LinearComplex honest_form(const Subdivision& s, const LinearStructure& y);

// Weak properness, checked on cones whose linear part is injective: every
// face of the closure of the image whose relative interior lies in the
// relative interior of the target cone, or meets the image of the morphism,
// is the image of a face of the same codimension.
struct ProperReport {
  bool ok = true;
  std::string witness;
};
ProperReport is_weakly_proper(const PoicComplex& phi, const PoicComplex& psi, const ComplexMorphism& p);
// Weak properness of p after each subdivision the engine builds for phi:
// identity, barycentric, and the stellar subdivision at every pointed cone of
// dimension at least two.  A necessary condition for properness only.
ProperReport is_proper_bounded(const PoicComplex& phi, const PoicComplex& psi, const ComplexMorphism& p);

// Subdivision of psi reproducing the open images of all source cones with
// injective linear part.  When these images already partition every target
// cone they are the refinement; otherwise stellar subdivisions are made at the
// rays of the image closures, in decreasing dimension of the target cone
// containing them.
// Throws NotPFine when an image is still not a single cone.
Subdivision pfine_refinement(const PoicComplex& phi, const PoicComplex& psi, const ComplexMorphism& p);

// S2 after S1, where S2 subdivides the source of S1.
Subdivision compose_subdivisions(const Subdivision& outer, const Subdivision& inner);

// Source cone of s matching the open image of cone c under p, if any.
std::optional<std::size_t> pfine_match(const PoicComplex& phi, const ComplexMorphism& p, const Subdivision& s,
                                       std::size_t c);

// Index-weighted pushforward of a k-dimensional weight.  Throws NotPFine.
Weight pushforward(const PoicComplex& phi, const ComplexMorphism& p, const Subdivision& s, const Weight& w);

struct Cycle {
  Subdivision subdivision;
  Weight weight;  // on subdivision.source
};
// Equality after pulling both weights back to the common refinement.
// Throws IncomparableSubdivisions when the base complexes differ.
bool cycle_equal(const Cycle& a, const Cycle& b);

// Same cones and the same order relation.
bool same_complex(const PoicComplex& a, const PoicComplex& b);

}  // namespace tropocone
