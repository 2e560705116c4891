#include "tropocone/poic.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "tropocone/error.hpp"

namespace tropocone {

namespace {

bool subset_of(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool has_element(const std::vector<std::size_t>& s, std::size_t x) { return std::binary_search(s.begin(), s.end(), x); }

}  // namespace

// ---------------------------------------------------------------- faces

void Poic::enumerate_faces() {
  const auto& F = closure_.facets();
  const auto& R = closure_.rays();
  const std::size_t m = F.size(), k = R.size();
  std::vector<std::vector<bool>> inc(k, std::vector<bool>(m));
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t f = 0; f < m; ++f) inc[r][f] = dot(F[f], R[r]) == 0;

  auto rays_on = [&](const std::vector<std::size_t>& S) {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < k; ++r) {
      bool ok = true;
      for (std::size_t f : S)
        if (!inc[r][f]) {
          ok = false;
          break;
        }
      if (ok) out.push_back(r);
    }
    return out;
  };
  auto close = [&](const std::vector<std::size_t>& S) {
    std::vector<std::size_t> rs = rays_on(S), T;
    for (std::size_t f = 0; f < m; ++f) {
      bool ok = true;
      for (std::size_t r : rs)
        if (!inc[r][f]) {
          ok = false;
          break;
        }
      if (ok) T.push_back(f);
    }
    return T;
  };

  std::set<std::vector<std::size_t>> seen;
  std::deque<std::vector<std::size_t>> queue;
  auto start = close({});
  seen.insert(start);
  queue.push_back(start);
  while (!queue.empty()) {
    auto S = queue.front();
    queue.pop_front();
    for (std::size_t f = 0; f < m; ++f) {
      if (has_element(S, f)) continue;
      auto S2 = S;
      S2.push_back(f);
      std::sort(S2.begin(), S2.end());
      auto T = close(S2);
      if (seen.insert(T).second) queue.push_back(T);
    }
  }

  faces_.clear();
  for (const auto& T : seen) {
    ClosureFace face;
    face.tight = T;
    face.witness = Vec(rank_);
    std::vector<Vec> gens = closure_.lineality().row_list();
    for (std::size_t r : rays_on(T)) {
      face.witness = add(face.witness, R[r]);
      gens.push_back(R[r]);
    }
    face.dim = gens.empty() ? 0 : tropocone::rank(IntMatrix::from_rows(gens, rank_));
    faces_.push_back(std::move(face));
  }
  std::sort(faces_.begin(), faces_.end(), [](const ClosureFace& a, const ClosureFace& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.tight < b.tight;
  });
  by_tight_.clear();
  for (std::size_t i = 0; i < faces_.size(); ++i) by_tight_[faces_[i].tight] = i;
  top_ = faces_.size() - 1;
}

std::optional<std::size_t> Poic::face_of_point(const Vec& x) const {
  if (x.size() != rank_ || !closure_.contains(x)) return std::nullopt;
  auto it = by_tight_.find(closure_.tight_facets(x));
  if (it == by_tight_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Poic::face_by_tight(const std::vector<std::size_t>& tight) const {
  auto it = by_tight_.find(tight);
  if (it == by_tight_.end()) return std::nullopt;
  return it->second;
}

bool Poic::contains(const Vec& x) const {
  auto f = face_of_point(x);
  return f && faces_[*f].retained;
}

std::vector<std::size_t> Poic::retained_faces() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < faces_.size(); ++i)
    if (faces_[i].retained) out.push_back(i);
  return out;
}

bool Poic::is_closed() const {
  return std::all_of(faces_.begin(), faces_.end(), [](const ClosureFace& f) { return f.retained; });
}

std::vector<Vec> Poic::face_rays(std::size_t face) const {
  std::vector<Vec> out;
  for (const Vec& r : closure_.rays()) {
    bool ok = true;
    for (std::size_t f : faces_[face].tight)
      if (dot(closure_.facets()[f], r) != 0) {
        ok = false;
        break;
      }
    if (ok) out.push_back(r);
  }
  return out;
}

ClosedCone Poic::face_cone(std::size_t face) const { return closure_.face(faces_[face].tight); }

IntMatrix Poic::face_lattice(std::size_t face) const {
  const auto& fc = faces_[face];
  if (fc.dim == rank_) return IntMatrix::identity(rank_);
  std::vector<Vec> eqs;
  for (std::size_t f : fc.tight) eqs.push_back(closure_.facets()[f]);
  return integer_kernel(IntMatrix::from_rows(eqs, rank_));
}

FaceEmbedding Poic::face_embedding(std::size_t face) const {
  IntMatrix E = face_lattice(face).transpose();
  ClosedCone sub = closure_.preimage(E);
  Poic p = from_closure(sub, [&](const Vec& w) { return contains(E * w); });
  return FaceEmbedding{std::move(p), std::move(E), face};
}

std::vector<FaceEmbedding> Poic::faces() const {
  std::vector<FaceEmbedding> out;
  for (std::size_t i : retained_faces()) out.push_back(face_embedding(i));
  return out;
}

std::vector<PoicConstraint> Poic::constraints() const {
  std::vector<PoicConstraint> out = facets_;
  for (const Vec& c : cuts_) out.push_back({c, true});
  return out;
}

std::string Poic::to_string() const {
  std::ostringstream os;
  os << "poic(rank=" << rank_ << ", {";
  bool first = true;
  for (const auto& c : constraints()) {
    os << (first ? "" : ", ") << vec_to_string(c.normal) << (c.strict ? ">0" : ">=0");
    first = false;
  }
  os << "}";
  if (!representable_) {
    os << ", retained=[";
    bool f2 = true;
    for (std::size_t i : retained_faces()) {
      os << (f2 ? "" : ",") << vec_to_string(faces_[i].witness);
      f2 = false;
    }
    os << "]";
  }
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------- constructors

namespace {

// Faces killed by a strict normal c: those whose witness c vanishes on.
std::vector<bool> killed_by(const std::vector<Poic::ClosureFace>& faces, const Vec& c) {
  std::vector<bool> out(faces.size());
  for (std::size_t i = 0; i < faces.size(); ++i) out[i] = dot(c, faces[i].witness) == 0;
  return out;
}

}  // namespace

Poic Poic::from_closure(const ClosedCone& closure, const std::function<bool(const Vec&)>& retained_at) {
  if (!closure.is_full_dimensional())
    throw Error(ErrorCode::NotFullDimensional, "closure " + closure.to_string() + " does not span the lattice");
  Poic p;
  p.rank_ = closure.ambient_dim();
  p.closure_ = closure;
  p.enumerate_faces();
  for (auto& f : p.faces_) f.retained = retained_at(f.witness);
  if (!p.faces_[p.top_].retained) throw Error(ErrorCode::EmptyCone, "the relative interior of the closure is not retained");
  const std::size_t nf = p.faces_.size();
  for (std::size_t i = 0; i < nf; ++i) {
    if (!p.faces_[i].retained) continue;
    for (std::size_t j = i + 1; j < nf; ++j) {
      if (!p.faces_[j].retained) continue;
      auto join = p.face_of_point(add(p.faces_[i].witness, p.faces_[j].witness));
      if (!join || !p.faces_[*join].retained)
        throw Error(ErrorCode::NotConvex, "retained faces are not closed under joins");
    }
  }
  // Facet strictness.
  const auto& F = closure.facets();
  for (std::size_t f = 0; f < F.size(); ++f) {
    // A facet face of a full-dimensional cone is cut out by its own facet only.
    std::size_t idx = *p.face_by_tight({f});
    p.facets_.push_back({F[f], !p.faces_[idx].retained});
  }
  // Cuts for the maximal dropped faces not already covered by strict facets.
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < nf; ++i) {
    if (p.faces_[i].retained) continue;
    bool covered = false;
    for (std::size_t f : p.faces_[i].tight)
      if (p.facets_[f].strict) covered = true;
    if (!covered) candidates.push_back(i);
  }
  for (std::size_t i : candidates) {
    bool maximal = true;
    for (std::size_t j : candidates)
      if (j != i && p.faces_[j].tight != p.faces_[i].tight && subset_of(p.faces_[j].tight, p.faces_[i].tight))
        maximal = false;
    if (!maximal) continue;
    Vec c(p.rank_);
    for (std::size_t f : p.faces_[i].tight) c = add(c, F[f]);
    p.cuts_.push_back(primitive(c));
  }
  std::sort(p.cuts_.begin(), p.cuts_.end());
  // Check that the half-space description reproduces the retained faces.
  for (const auto& face : p.faces_) {
    bool implied = true;
    for (std::size_t f : face.tight)
      if (p.facets_[f].strict) implied = false;
    for (const Vec& c : p.cuts_)
      if (dot(c, face.witness) == 0) implied = false;
    if (implied != face.retained) p.representable_ = false;
  }
  return p;
}

Poic Poic::from_closure_faces(const ClosedCone& closure, const std::vector<std::vector<std::size_t>>& retained) {
  std::set<std::vector<std::size_t>> keep;
  for (auto t : retained) {
    std::sort(t.begin(), t.end());
    keep.insert(t);
  }
  return from_closure(closure, [&](const Vec& w) { return keep.count(closure.tight_facets(w)) > 0; });
}

Poic Poic::make(std::size_t rank, const std::vector<PoicConstraint>& constraints) {
  std::vector<Vec> normals;
  std::set<Vec> strict;
  for (const auto& c : constraints) {
    if (c.normal.size() != rank) throw Error(ErrorCode::DimensionMismatch, "constraint normal length differs from rank");
    if (is_zero(c.normal)) {
      if (c.strict) throw Error(ErrorCode::EmptyCone, "strict constraint 0 > 0");
      continue;
    }
    Vec n = primitive(c.normal);
    normals.push_back(n);
    if (c.strict) strict.insert(n);
  }
  ClosedCone C = ClosedCone::from_inequalities(rank, normals);
  Vec w = C.interior_point();
  for (const Vec& s : strict)
    if (dot(s, w) == 0)
      throw Error(ErrorCode::EmptyCone, "strict constraint " + vec_to_string(s) + " vanishes on the whole closure");
  if (!C.is_full_dimensional()) throw Error(ErrorCode::NotFullDimensional, "closure " + C.to_string() + " is not full-dimensional");

  Poic p = from_closure(C, [&](const Vec& x) {
    for (const Vec& s : strict)
      if (dot(s, x) == 0) return false;
    return true;
  });
  // Keep the caller's cuts (strict non-facet normals), minus redundant ones.
  std::set<Vec> facet_set(C.facets().begin(), C.facets().end());
  std::vector<Vec> cuts;
  for (const Vec& s : strict)
    if (!facet_set.count(s)) cuts.push_back(s);
  std::vector<bool> active(cuts.size(), true);
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    auto kill = killed_by(p.faces_, cuts[i]);
    bool redundant = true;
    for (std::size_t fi = 0; fi < p.faces_.size() && redundant; ++fi) {
      if (!kill[fi]) continue;
      bool other = false;
      for (std::size_t f : p.faces_[fi].tight)
        if (p.facets_[f].strict) other = true;
      for (std::size_t j = 0; j < cuts.size() && !other; ++j)
        if (j != i && active[j] && dot(cuts[j], p.faces_[fi].witness) == 0) other = true;
      if (!other) redundant = false;
    }
    if (redundant) active[i] = false;
  }
  p.cuts_.clear();
  for (std::size_t i = 0; i < cuts.size(); ++i)
    if (active[i]) p.cuts_.push_back(cuts[i]);
  p.representable_ = true;
  return p;
}

Poic Poic::closed_orthant(std::size_t n) {
  std::vector<PoicConstraint> cs;
  for (std::size_t i = 0; i < n; ++i) cs.push_back({unit_vector(n, i), false});
  return make(n, cs);
}

Poic Poic::open_orthant(std::size_t n) {
  std::vector<PoicConstraint> cs;
  for (std::size_t i = 0; i < n; ++i) cs.push_back({unit_vector(n, i), true});
  return make(n, cs);
}

bool same_cone(const Poic& a, const Poic& b) {
  if (!(a.closure() == b.closure())) return false;
  const auto& fa = a.closure_faces();
  const auto& fb = b.closure_faces();
  if (fa.size() != fb.size()) return false;
  for (std::size_t i = 0; i < fa.size(); ++i)
    if (fa[i].retained != fb[i].retained) return false;
  return true;
}

Poic product(const Poic& a, const Poic& b) {
  const std::size_t n = a.rank(), m = b.rank();
  std::vector<Vec> ineq;
  for (const Vec& f : a.closure().facets()) ineq.push_back(concat(f, Vec(m)));
  for (const Vec& f : b.closure().facets()) ineq.push_back(concat(Vec(n), f));
  ClosedCone C = ClosedCone::from_inequalities(n + m, ineq);
  return Poic::from_closure(C, [&](const Vec& w) {
    Vec x(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n));
    Vec y(w.begin() + static_cast<std::ptrdiff_t>(n), w.end());
    return a.contains(x) && b.contains(y);
  });
}

// ---------------------------------------------------------------- morphisms

bool maps_into(const IntMatrix& A, const Poic& sigma, const Poic& xi, std::string* witness) {
  if (A.rows() != xi.rank() || A.cols() != sigma.rank())
    throw Error(ErrorCode::DimensionMismatch, "morphism matrix shape does not match the cone ranks");
  const ClosedCone& target = xi.closure();
  auto fail = [&](const Vec& x, const char* what) {
    if (witness) *witness = std::string(what) + " " + vec_to_string(x) + " maps to " + vec_to_string(A * x);
    return false;
  };
  for (const Vec& r : sigma.closure().rays())
    if (!target.contains(A * r)) return fail(r, "closure ray");
  for (const Vec& l : sigma.closure().lineality().row_list()) {
    if (!target.contains(A * l)) return fail(l, "lineality vector");
    if (!target.contains(A * scale(-1, l))) return fail(scale(-1, l), "lineality vector");
  }
  for (std::size_t i : sigma.retained_faces()) {
    const Vec& w = sigma.closure_faces()[i].witness;
    if (!xi.contains(A * w)) return fail(w, "relative-interior point");
  }
  return true;
}

MorphismReport check_morphism(const IntMatrix& A, const Poic& sigma, const Poic& xi) {
  std::string why;
  if (!maps_into(A, sigma, xi, &why)) throw Error(ErrorCode::NotIntoCodomain, why);
  MorphismReport rep;
  rep.injective = rank(A) == sigma.rank();
  rep.image_face = xi.face_of_point(A * sigma.witness());
  if (!rep.injective) {
    rep.reason = "linear part is not injective";
    return rep;
  }
  const std::size_t g = *rep.image_face;
  if (xi.closure_faces()[g].dim != sigma.rank()) {
    rep.reason = "image does not have the dimension of its carrier face";
    return rep;
  }
  if (!(sigma.closure().image(A) == xi.face_cone(g))) {
    rep.reason = "image is not a whole face";
    return rep;
  }
  IntMatrix B = xi.face_lattice(g).transpose();  // columns: lattice basis of the face
  IntMatrix C(B.cols(), A.cols());
  for (std::size_t j = 0; j < A.cols(); ++j) {
    auto c = solve_integer(B, A.col(j));
    if (!c) {
      rep.reason = "image lattice is not contained in the face lattice";
      return rep;
    }
    C.set_col(j, *c);
  }
  if (abs(determinant(C)) != 1) {
    rep.reason = "image lattice is a proper sublattice of the face lattice";
    return rep;
  }
  for (const auto& face : sigma.closure_faces()) {
    auto img = xi.face_of_point(A * face.witness);
    if (!img || xi.closure_faces()[*img].retained != face.retained) {
      rep.reason = "partially open structure differs from the face";
      return rep;
    }
  }
  rep.face_embedding = true;
  return rep;
}

}  // namespace tropocone
