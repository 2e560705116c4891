#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropocone/linalg.hpp"
#include "tropocone/poic.hpp"

namespace tropocone {

struct Relation {
  std::size_t lower = 0;
  std::size_t upper = 0;
  IntMatrix matrix;  // face map N^lower -> N^upper
};

// A poic-complex stored as a poset: cones indexed 0..n-1, a strict partial
// order, and one face-embedding matrix per related pair.
class PoicComplex {
 public:
  PoicComplex() = default;

  // Validates both axioms and functoriality.  Missing transitive relations are
  // filled in by composing face maps.  Throws MissingFace, NotFaceEmbedding,
  // NonFunctorial.
  static PoicComplex make(std::vector<Poic> cones, const std::vector<Relation>& relations,
                          std::vector<std::string> labels = {});

  std::size_t size() const { return cones_.size(); }
  const Poic& cone(std::size_t p) const { return cones_[p]; }
  const std::vector<Poic>& cones() const { return cones_; }
  std::size_t dim(std::size_t p) const { return cones_[p].dim(); }
  std::size_t max_dim() const;
  const std::string& label(std::size_t p) const { return labels_[p]; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool less(std::size_t p, std::size_t q) const { return maps_.count({p, q}) > 0; }
  bool leq(std::size_t p, std::size_t q) const { return p == q || less(p, q); }
  // Face map for p <= q (identity when p == q).
  IntMatrix face_map(std::size_t p, std::size_t q) const;
  // Closure face of cone q hit by p (p <= q).
  std::size_t face_index(std::size_t p, std::size_t q) const;
  // Cone p <= q whose image is the given retained closure face of q.
  std::size_t cone_of_face(std::size_t q, std::size_t face) const;
  const std::vector<std::size_t>& below(std::size_t q) const { return below_[q]; }
  const std::vector<std::size_t>& above(std::size_t p) const { return above_[p]; }
  std::vector<Relation> relations() const;
  std::vector<std::size_t> cones_of_dim(std::size_t k) const;

  // Every cone lies below some n-dimensional cone.
  bool is_pure(std::size_t n) const;
  std::optional<std::size_t> pure_dim() const;

 private:
  std::vector<Poic> cones_;
  std::vector<std::string> labels_;
  std::map<std::pair<std::size_t, std::size_t>, IntMatrix> maps_;
  std::vector<std::vector<std::size_t>> below_, above_;
  std::vector<std::map<std::size_t, std::size_t>> face_index_;    // q -> (p -> face)
  std::vector<std::map<std::size_t, std::size_t>> cone_of_face_;  // q -> (face -> p)
};

// Integer matrices X_p : N^p -> N_X, natural with respect to all face maps.
struct LinearStructure {
  std::size_t target_rank = 0;
  std::vector<IntMatrix> maps;
};

// Throws NonFunctorial when a naturality square fails.
void check_linear_structure(const PoicComplex& phi, const LinearStructure& x);

struct LinearComplex {
  PoicComplex complex;
  LinearStructure linear;
};

// A full subcomplex together with the ids of its cones in the ambient complex.
struct Subcomplex {
  PoicComplex complex;
  std::vector<std::size_t> ids;
};

// Downward-closed set of cones; throws NotSubcomplex otherwise.
Subcomplex full_subcomplex(const PoicComplex& phi, const std::vector<std::size_t>& ids);
Subcomplex skeleton(const PoicComplex& phi, std::size_t k);
// Cones below (or equal to) q: the complex underline(Phi(q)).
Subcomplex closure_subcomplex(const PoicComplex& phi, std::size_t q);

// Product cone (i, j) gets id i * |psi| + j.
PoicComplex product_complex(const PoicComplex& phi, const PoicComplex& psi);
LinearStructure product_linear(const PoicComplex& phi, const LinearStructure& x, const PoicComplex& psi,
                               const LinearStructure& y);
inline std::size_t product_id(std::size_t i, std::size_t j, std::size_t psi_size) { return i * psi_size + j; }

// Cones t > s with dim t = dim s + 1.
std::vector<std::size_t> star1(const PoicComplex& phi, std::size_t s);

// The complex of all faces of one cone (underline(sigma)).
PoicComplex face_complex(const Poic& sigma);

// Fan in Z^n given by the generators of its maximal closed cones; all faces
// are included, except those whose relative-interior point fails `keep`
// (partially open fans).  Cones are in the coordinates of their saturated
// spans and the linear structure is the inclusion into Z^n.
LinearComplex fan_complex(std::size_t n, const std::vector<std::vector<Vec>>& maximal_cones);
LinearComplex fan_complex(std::size_t n, const std::vector<std::vector<Vec>>& maximal_cones,
                          const std::function<bool(const Vec&)>& keep);
// Builds a linear complex from closed ambient cones (each in Z^n), all faces
// of which must be present among them or dropped by `keep`.
LinearComplex complex_from_ambient_cones(std::size_t n, const std::vector<ClosedCone>& cones,
                                         const std::function<bool(const Vec&)>& keep);

// Morphism of poic-complexes: a cone map plus one linear map per cone.
struct ComplexMorphism {
  std::vector<std::size_t> cone_map;
  std::vector<IntMatrix> matrices;
};
// Checks that each cone maps into its image cone without landing in a proper
// face, and that all naturality squares commute.  Returns an empty string on
// success, otherwise a description of the first failure.
std::string check_complex_morphism(const PoicComplex& phi, const PoicComplex& psi, const ComplexMorphism& f);
ComplexMorphism compose(const ComplexMorphism& g, const ComplexMorphism& f);  // g after f

// A thin category of poics presented by explicit morphisms (isomorphisms
// included); skeletonize keeps one representative per isomorphism class.
struct ThinCategory {
  std::vector<Poic> objects;
  std::vector<Relation> morphisms;  // lower -> upper, any dimension gap (0 = isomorphism)
};
struct Skeletonization {
  PoicComplex complex;
  std::vector<std::size_t> representative;  // object -> cone id
  std::vector<IntMatrix> to_representative;  // object -> iso onto its representative
};
Skeletonization skeletonize(const ThinCategory& category);

// Rational polyhedron given by vertices (rational points) and recession rays.
struct Polyhedron {
  std::vector<std::vector<Rat>> vertices;
  std::vector<Vec> rays;
};
struct PolyhedralComplex {
  std::size_t ambient_dim = 0;
  std::vector<Polyhedron> cells;
};

// Cone over every cell at height one, cut to z > 0, with the origin adjoined;
// linear structure is the inclusion into Z^n + Z.  The result's cone 0 is the
// shared origin and cone i+1 corresponds to cell i.
LinearComplex conify(const PolyhedralComplex& complex);
// Inverse check: intersect each non-origin cone with z = 1 (canonical cells).
PolyhedralComplex slice_at_height_one(const LinearComplex& cones);
// Canonical form of a polyhedron (sorted primitive rays, sorted vertices of the minimal description).
Polyhedron canonical_polyhedron(std::size_t ambient_dim, const Polyhedron& p);

}  // namespace tropocone
