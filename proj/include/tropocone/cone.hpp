#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tropocone/linalg.hpp"

namespace tropocone {

// A closed rational polyhedral cone in Q^n, kept in both descriptions:
//   H: { x : a.x >= 0 for a in facets, e.x = 0 for e in equations }
//   V: cone(rays) + span(lineality)
// Both descriptions are irredundant and canonical: rays are primitive and
// orthogonal to the lineality space, facet normals are primitive and lie in
// the span of the cone, and bases are in Hermite normal form.  Two cones are
// equal iff their canonical data agree.
class ClosedCone {
 public:
  ClosedCone() = default;

  static ClosedCone from_inequalities(std::size_t n, const std::vector<Vec>& inequalities,
                                      const std::vector<Vec>& equations = {});
  static ClosedCone from_generators(std::size_t n, const std::vector<Vec>& rays,
                                    const std::vector<Vec>& lineality = {});
  static ClosedCone whole_space(std::size_t n) { return from_inequalities(n, {}); }
  static ClosedCone origin(std::size_t n) { return from_generators(n, {}); }

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return dim_; }
  bool is_full_dimensional() const { return dim_ == n_; }
  bool is_pointed() const { return lineality_.rows() == 0; }

  const std::vector<Vec>& rays() const { return rays_; }
  const IntMatrix& lineality() const { return lineality_; }   // rows
  const std::vector<Vec>& facets() const { return facets_; }
  const IntMatrix& equations() const { return equations_; }   // rows

  // Sum of the rays: an integer point in the relative interior.
  Vec interior_point() const;

  bool contains(const Vec& x) const;
  bool relative_interior_contains(const Vec& x) const;
  // Indices of facets vanishing at x (x assumed in the cone).
  std::vector<std::size_t> tight_facets(const Vec& x) const;
  // The face cut out by the given facets becoming equations.
  ClosedCone face(const std::vector<std::size_t>& tight) const;
  // Smallest face containing the point x (x assumed in the cone).
  ClosedCone face_containing(const Vec& x) const { return face(tight_facets(x)); }

  ClosedCone intersect(const ClosedCone& other) const;
  // Image under A (A has n columns).
  ClosedCone image(const IntMatrix& A) const;
  // Preimage under A (A has n rows): { y : A y in cone }.
  ClosedCone preimage(const IntMatrix& A) const;
  // Saturated integer basis (rows) of the linear span.
  IntMatrix span_basis() const;

  friend bool operator==(const ClosedCone& a, const ClosedCone& b) {
    return a.n_ == b.n_ && a.rays_ == b.rays_ && a.lineality_ == b.lineality_;
  }
  friend bool operator<(const ClosedCone& a, const ClosedCone& b);

  std::string to_string() const;

 private:
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<Vec> rays_;
  IntMatrix lineality_;
  std::vector<Vec> facets_;
  IntMatrix equations_;
};

// Canonical representative of v modulo span(rows of L): the rational
// orthogonal projection onto the complement, scaled to a primitive vector.
// Returns the zero vector if v lies in the span.
Vec project_primitive(const Vec& v, const IntMatrix& L);

}  // namespace tropocone
