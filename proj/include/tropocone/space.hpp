#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropocone/complex.hpp"
#include "tropocone/poic.hpp"

namespace tropocone {

// A morphism source -> target of a poic-space, realized by the face-embedding
// matrix N^source -> N^target.
struct SpaceMorphism {
  std::size_t source = 0;
  std::size_t target = 0;
  IntMatrix matrix;
};

// A poic-space on a finite category stored extensionally.  Morphisms inducing
// the same matrix are identified, so a hom-set is a set of face embeddings.
class PoicSpace {
 public:
  PoicSpace() = default;

  // Adds identities and closes under composition.  Throws NotIntoCodomain when
  // a matrix does not map its source into its target.
  static PoicSpace make(std::vector<Poic> objects, const std::vector<SpaceMorphism>& morphisms,
                        std::vector<std::string> labels = {});

  std::size_t size() const { return objects_.size(); }
  const Poic& object(std::size_t x) const { return objects_[x]; }
  const std::vector<Poic>& objects() const { return objects_; }
  std::size_t dim(std::size_t x) const { return objects_[x].dim(); }
  const std::string& label(std::size_t x) const { return labels_[x]; }

  const std::vector<SpaceMorphism>& morphisms() const { return morphisms_; }
  const SpaceMorphism& morphism(std::size_t m) const { return morphisms_[m]; }
  const std::vector<std::size_t>& hom(std::size_t s, std::size_t t) const;
  std::size_t identity(std::size_t x) const { return identity_[x]; }
  std::optional<std::size_t> find(std::size_t s, std::size_t t, const IntMatrix& matrix) const;
  // Index of g after f.
  std::size_t compose(std::size_t g, std::size_t f) const;
  bool is_isomorphism(std::size_t m) const { return dim(morphisms_[m].source) == dim(morphisms_[m].target); }
  std::vector<std::size_t> isomorphisms(std::size_t s, std::size_t t) const;
  std::vector<std::size_t> automorphisms(std::size_t x) const { return isomorphisms(x, x); }

  // Isomorphism classes: class_of(x) indexes classes(), whose entries list
  // their objects in increasing order (the first is the representative).
  std::size_t class_of(std::size_t x) const { return class_of_[x]; }
  const std::vector<std::vector<std::size_t>>& classes() const { return classes_; }
  std::vector<std::size_t> classes_of_dim(std::size_t k) const;

 private:
  std::vector<Poic> objects_;
  std::vector<std::string> labels_;
  std::vector<SpaceMorphism> morphisms_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> hom_;
  std::vector<std::size_t> identity_;
  std::vector<std::size_t> class_of_;
  std::vector<std::vector<std::size_t>> classes_;
};

// The poic-space of a poic-complex (identities and the face relations).
PoicSpace space_from_complex(const PoicComplex& phi);

struct SpaceReport {
  bool face_embeddings = true;  // every morphism is a face embedding
  bool faces_realized = true;   // every retained face is the image of some morphism
  bool faces_unique = true;     // ... unique up to isomorphism
  std::vector<std::string> violations;
  bool valid() const { return face_embeddings && faces_realized && faces_unique; }
};
SpaceReport validate_space(const PoicSpace& x);

}  // namespace tropocone
