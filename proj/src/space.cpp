#include "tropocone/space.hpp"

#include <algorithm>
#include <numeric>

#include "tropocone/error.hpp"

namespace tropocone {

namespace {
const std::vector<std::size_t> kNoMorphisms;
}

PoicSpace PoicSpace::make(std::vector<Poic> objects, const std::vector<SpaceMorphism>& morphisms,
                          std::vector<std::string> labels) {
  PoicSpace x;
  const std::size_t n = objects.size();
  x.objects_ = std::move(objects);
  if (labels.empty())
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  if (labels.size() != n) throw Error(ErrorCode::DimensionMismatch, "label count differs from object count");
  x.labels_ = std::move(labels);

  auto add = [&](const SpaceMorphism& m) -> bool {
    if (m.source >= n || m.target >= n) throw Error(ErrorCode::DimensionMismatch, "morphism refers to an unknown object");
    if (m.matrix.rows() != x.objects_[m.target].rank() || m.matrix.cols() != x.objects_[m.source].rank())
      throw Error(ErrorCode::DimensionMismatch, "morphism matrix shape does not match the objects");
    if (x.find(m.source, m.target, m.matrix)) return false;
    std::string witness;
    if (!maps_into(m.matrix, x.objects_[m.source], x.objects_[m.target], &witness))
      throw Error(ErrorCode::NotIntoCodomain,
                  "morphism " + x.labels_[m.source] + " -> " + x.labels_[m.target] + " leaves the target: " + witness);
    x.hom_[{m.source, m.target}].push_back(x.morphisms_.size());
    x.morphisms_.push_back(m);
    return true;
  };
  x.identity_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    add({i, i, IntMatrix::identity(x.objects_[i].rank())});
    x.identity_[i] = *x.find(i, i, IntMatrix::identity(x.objects_[i].rank()));
  }
  for (const auto& m : morphisms) add(m);
  // Close under composition.
  for (std::size_t done = 0; done < x.morphisms_.size();) {
    const std::size_t end = x.morphisms_.size();
    for (std::size_t a = 0; a < end; ++a)
      for (std::size_t b = 0; b < end; ++b) {
        if (a < done && b < done) continue;
        const SpaceMorphism f = x.morphisms_[a], g = x.morphisms_[b];
        if (f.target != g.source) continue;
        add({f.source, g.target, g.matrix * f.matrix});
      }
    done = end;
  }
  // Isomorphism classes.
  x.class_of_.assign(n, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < n; ++i) {
    if (x.class_of_[i] != static_cast<std::size_t>(-1)) continue;
    x.class_of_[i] = x.classes_.size();
    std::vector<std::size_t> cls{i};
    for (std::size_t j = i + 1; j < n; ++j)
      if (!x.isomorphisms(i, j).empty()) {
        x.class_of_[j] = x.classes_.size();
        cls.push_back(j);
      }
    x.classes_.push_back(std::move(cls));
  }
  return x;
}

const std::vector<std::size_t>& PoicSpace::hom(std::size_t s, std::size_t t) const {
  auto it = hom_.find({s, t});
  return it == hom_.end() ? kNoMorphisms : it->second;
}

std::optional<std::size_t> PoicSpace::find(std::size_t s, std::size_t t, const IntMatrix& matrix) const {
  for (std::size_t m : hom(s, t))
    if (morphisms_[m].matrix == matrix) return m;
  return std::nullopt;
}

std::size_t PoicSpace::compose(std::size_t g, std::size_t f) const {
  const SpaceMorphism &a = morphisms_[f], &b = morphisms_[g];
  if (a.target != b.source) throw Error(ErrorCode::DimensionMismatch, "morphisms are not composable");
  return *find(a.source, b.target, b.matrix * a.matrix);
}

std::vector<std::size_t> PoicSpace::isomorphisms(std::size_t s, std::size_t t) const {
  std::vector<std::size_t> out;
  if (dim(s) != dim(t)) return out;
  for (std::size_t m : hom(s, t)) out.push_back(m);
  return out;
}

std::vector<std::size_t> PoicSpace::classes_of_dim(std::size_t k) const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < classes_.size(); ++c)
    if (dim(classes_[c].front()) == k) out.push_back(c);
  return out;
}

PoicSpace space_from_complex(const PoicComplex& phi) {
  std::vector<SpaceMorphism> ms;
  for (const auto& r : phi.relations()) ms.push_back({r.lower, r.upper, r.matrix});
  return PoicSpace::make(phi.cones(), ms, phi.labels());
}

SpaceReport validate_space(const PoicSpace& x) {
  SpaceReport rep;
  // image face of every morphism
  std::vector<std::optional<std::size_t>> image(x.morphisms().size());
  for (std::size_t m = 0; m < x.morphisms().size(); ++m) {
    const SpaceMorphism& f = x.morphism(m);
    MorphismReport r = check_morphism(f.matrix, x.object(f.source), x.object(f.target));
    if (!r.face_embedding) {
      rep.face_embeddings = false;
      rep.violations.push_back("morphism " + x.label(f.source) + " -> " + x.label(f.target) +
                               " is not a face embedding: " + r.reason);
      continue;
    }
    image[m] = r.image_face;
  }
  for (std::size_t t = 0; t < x.size(); ++t) {
    for (std::size_t face : x.object(t).retained_faces()) {
      std::vector<std::size_t> over;
      for (std::size_t m = 0; m < x.morphisms().size(); ++m)
        if (x.morphism(m).target == t && image[m] == face) over.push_back(m);
      if (over.empty()) {
        rep.faces_realized = false;
        rep.violations.push_back("face " + std::to_string(face) + " of " + x.label(t) + " is not realized");
        continue;
      }
      // Any two realizations differ by an isomorphism of their sources.
      const SpaceMorphism& f0 = x.morphism(over.front());
      for (std::size_t m : over) {
        const SpaceMorphism& f = x.morphism(m);
        bool found = false;
        for (std::size_t h : x.isomorphisms(f.source, f0.source))
          if (f0.matrix * x.morphism(h).matrix == f.matrix) found = true;
        if (!found) {
          rep.faces_unique = false;
          rep.violations.push_back("face " + std::to_string(face) + " of " + x.label(t) +
                                   " is realized by non-isomorphic morphisms from " + x.label(f0.source) + " and " +
                                   x.label(f.source));
        }
      }
    }
  }
  return rep;
}

}  // namespace tropocone
