#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tropocone/cone.hpp"
#include "tropocone/linalg.hpp"

namespace tropocone {

struct PoicConstraint {
  Vec normal;
  bool strict = false;
  friend bool operator==(const PoicConstraint& a, const PoicConstraint& b) {
    return a.normal == b.normal && a.strict == b.strict;
  }
};

struct FaceEmbedding;

// A partially open integral cone: a full-dimensional closed cone in Q^rank
// together with the set of closure faces whose relative interiors belong to
// the cone.  For cones given by closed and strict half-spaces the retained
// faces are exactly those on which no strict constraint vanishes identically;
// the general form also covers cones such as "open half-space plus the
// origin" that arise when coning over polyhedra.
class Poic {
 public:
  struct ClosureFace {
    std::vector<std::size_t> tight;  // indices of closure facets vanishing on the face
    std::size_t dim = 0;
    Vec witness;                     // integer point of the relative interior
    bool retained = false;
  };

  Poic() = default;

  // Cone cut out by closed and strict half-spaces.  Redundant inequalities are
  // removed.  Throws EmptyCone or NotFullDimensional.
  static Poic make(std::size_t rank, const std::vector<PoicConstraint>& constraints);
  // Cone with the given full-dimensional closure, retaining the closure faces
  // whose relative-interior witness satisfies the predicate.  Throws EmptyCone
  // (top face dropped), NotFullDimensional or NotConvex (retained faces not
  // closed under joins).
  static Poic from_closure(const ClosedCone& closure, const std::function<bool(const Vec&)>& retained_at);
  // Same, with the retained faces given by their tight facet sets.
  static Poic from_closure_faces(const ClosedCone& closure, const std::vector<std::vector<std::size_t>>& retained);

  static Poic closed_orthant(std::size_t n);
  static Poic open_orthant(std::size_t n);
  static Poic point() { return closed_orthant(0); }

  std::size_t rank() const { return rank_; }
  std::size_t dim() const { return rank_; }
  const ClosedCone& closure() const { return closure_; }
  // Closure facets with strictness flags (strict = the facet face is dropped).
  const std::vector<PoicConstraint>& facets() const { return facets_; }
  // Strict inequalities that are not facets of the closure.
  const std::vector<Vec>& cuts() const { return cuts_; }
  // Facets followed by cuts (flagged strict): the interchange description.
  std::vector<PoicConstraint> constraints() const;
  // True when the facet flags and cuts reproduce the retained faces.
  bool representable_by_halfspaces() const { return representable_; }

  const std::vector<ClosureFace>& closure_faces() const { return faces_; }
  std::size_t top_face() const { return top_; }
  std::vector<std::size_t> retained_faces() const;
  const Vec& witness() const { return faces_[top_].witness; }
  bool is_closed() const;
  bool is_pointed() const { return closure_.is_pointed(); }

  // Index of the closure face containing x in its relative interior, if x lies in the closure.
  std::optional<std::size_t> face_of_point(const Vec& x) const;
  std::optional<std::size_t> face_by_tight(const std::vector<std::size_t>& tight) const;
  bool contains(const Vec& x) const;
  // Rays (primitive generators) of the closure face.
  std::vector<Vec> face_rays(std::size_t face) const;
  // The closed cone of a closure face, in ambient coordinates.
  ClosedCone face_cone(std::size_t face) const;
  // Saturated integer basis (rows) of the span of a closure face.
  IntMatrix face_lattice(std::size_t face) const;

  // One embedding per retained face, including the cone itself (last).
  std::vector<FaceEmbedding> faces() const;
  FaceEmbedding face_embedding(std::size_t face) const;

  std::string to_string() const;

 private:
  void enumerate_faces();

  std::size_t rank_ = 0;
  ClosedCone closure_;
  std::vector<PoicConstraint> facets_;
  std::vector<Vec> cuts_;
  std::vector<ClosureFace> faces_;
  std::map<std::vector<std::size_t>, std::size_t> by_tight_;
  std::size_t top_ = 0;
  bool representable_ = true;
};

// Same closure and same retained faces.
bool same_cone(const Poic& a, const Poic& b);
Poic product(const Poic& a, const Poic& b);

// Inclusion of a face: `sub` in its own coordinates, `matrix` its embedding
// N^sub -> N^sup whose image lattice is the saturated span of the face.
struct FaceEmbedding {
  Poic sub;
  IntMatrix matrix;
  std::size_t face = 0;  // index among the closure faces of sup
};

struct MorphismReport {
  bool injective = false;
  bool face_embedding = false;
  std::optional<std::size_t> image_face;  // closure face of the codomain met by the interior image
  std::string reason;                     // why it is not a face-embedding, if not
};

// Validates that A maps sigma into xi (throws NotIntoCodomain with a witness)
// and classifies the map.
MorphismReport check_morphism(const IntMatrix& A, const Poic& sigma, const Poic& xi);
bool maps_into(const IntMatrix& A, const Poic& sigma, const Poic& xi, std::string* witness = nullptr);

}  // namespace tropocone
