#include "tropocone/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "tropocone/error.hpp"

namespace tropocone {

// ---------------------------------------------------------------- PoicComplex

PoicComplex PoicComplex::make(std::vector<Poic> cones, const std::vector<Relation>& relations,
                              std::vector<std::string> labels) {
  PoicComplex c;
  const std::size_t n = cones.size();
  c.cones_ = std::move(cones);
  if (labels.empty())
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  if (labels.size() != n) throw Error(ErrorCode::DimensionMismatch, "label count differs from cone count");
  c.labels_ = std::move(labels);

  for (const auto& r : relations) {
    if (r.lower >= n || r.upper >= n) throw Error(ErrorCode::DimensionMismatch, "relation refers to an unknown cone");
    if (r.lower == r.upper) throw Error(ErrorCode::NonFunctorial, "relation of a cone with itself");
    if (r.matrix.rows() != c.cones_[r.upper].rank() || r.matrix.cols() != c.cones_[r.lower].rank())
      throw Error(ErrorCode::DimensionMismatch, "face map shape does not match cone ranks");
    auto key = std::make_pair(r.lower, r.upper);
    auto it = c.maps_.find(key);
    if (it != c.maps_.end() && !(it->second == r.matrix))
      throw Error(ErrorCode::NonFunctorial, "two different face maps for the same pair");
    c.maps_[key] = r.matrix;
  }
  // Transitive closure by composing face maps.
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::vector<std::size_t>> up(n);
    for (const auto& [k, m] : c.maps_) up[k.first].push_back(k.second);
    std::vector<std::tuple<std::size_t, std::size_t, IntMatrix>> additions;
    for (const auto& [k, m] : c.maps_) {
      for (std::size_t r : up[k.second]) {
        if (r == k.first) throw Error(ErrorCode::NonFunctorial, "the order relation has a cycle");
        IntMatrix comp = c.maps_.at({k.second, r}) * m;
        auto it = c.maps_.find({k.first, r});
        if (it != c.maps_.end()) {
          if (!(it->second == comp))
            throw Error(ErrorCode::NonFunctorial, "face maps do not compose for " + c.labels_[k.first] + " < " +
                                                      c.labels_[k.second] + " < " + c.labels_[r]);
        } else {
          additions.emplace_back(k.first, r, comp);
        }
      }
    }
    for (auto& [p, r, m] : additions) {
      auto it = c.maps_.find({p, r});
      if (it == c.maps_.end()) {
        c.maps_[{p, r}] = m;
        changed = true;
      } else if (!(it->second == m)) {
        throw Error(ErrorCode::NonFunctorial, "face maps do not compose");
      }
    }
  }

  c.below_.assign(n, {});
  c.above_.assign(n, {});
  c.face_index_.assign(n, {});
  c.cone_of_face_.assign(n, {});
  for (const auto& [k, m] : c.maps_) {
    c.below_[k.second].push_back(k.first);
    c.above_[k.first].push_back(k.second);
  }
  for (std::size_t q = 0; q < n; ++q) {
    std::sort(c.below_[q].begin(), c.below_[q].end());
    std::sort(c.above_[q].begin(), c.above_[q].end());
  }

  for (const auto& [k, m] : c.maps_) {
    const auto& [p, q] = k;
    MorphismReport rep;
    try {
      rep = check_morphism(m, c.cones_[p], c.cones_[q]);
    } catch (const Error& e) {
      throw Error(ErrorCode::NotFaceEmbedding, c.labels_[p] + " -> " + c.labels_[q] + ": " + e.what());
    }
    if (!rep.face_embedding)
      throw Error(ErrorCode::NotFaceEmbedding, c.labels_[p] + " -> " + c.labels_[q] + ": " + rep.reason);
    if (*rep.image_face == c.cones_[q].top_face())
      throw Error(ErrorCode::MissingFace, c.labels_[p] + " is isomorphic to " + c.labels_[q] + " (duplicate top face)");
    c.face_index_[q][p] = *rep.image_face;
  }
  for (std::size_t q = 0; q < n; ++q) {
    c.face_index_[q][q] = c.cones_[q].top_face();
    for (const auto& [p, f] : c.face_index_[q]) {
      if (c.cone_of_face_[q].count(f))
        throw Error(ErrorCode::MissingFace, "face of " + c.labels_[q] + " realized by both " +
                                                c.labels_[c.cone_of_face_[q][f]] + " and " + c.labels_[p]);
      c.cone_of_face_[q][f] = p;
    }
    for (std::size_t f : c.cones_[q].retained_faces())
      if (!c.cone_of_face_[q].count(f))
        throw Error(ErrorCode::MissingFace, "face with witness " + vec_to_string(c.cones_[q].closure_faces()[f].witness) +
                                                " of " + c.labels_[q] + " has no cone");
  }
  return c;
}

std::size_t PoicComplex::max_dim() const {
  std::size_t d = 0;
  for (const auto& c : cones_) d = std::max(d, c.dim());
  return d;
}

IntMatrix PoicComplex::face_map(std::size_t p, std::size_t q) const {
  if (p == q) return IntMatrix::identity(cones_[p].rank());
  auto it = maps_.find({p, q});
  if (it == maps_.end()) throw Error(ErrorCode::NonFunctorial, "no relation " + labels_[p] + " < " + labels_[q]);
  return it->second;
}

std::size_t PoicComplex::face_index(std::size_t p, std::size_t q) const { return face_index_[q].at(p); }

std::size_t PoicComplex::cone_of_face(std::size_t q, std::size_t face) const { return cone_of_face_[q].at(face); }

std::vector<Relation> PoicComplex::relations() const {
  std::vector<Relation> out;
  for (const auto& [k, m] : maps_) out.push_back({k.first, k.second, m});
  return out;
}

std::vector<std::size_t> PoicComplex::cones_of_dim(std::size_t k) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cones_.size(); ++i)
    if (cones_[i].dim() == k) out.push_back(i);
  return out;
}

bool PoicComplex::is_pure(std::size_t n) const {
  for (std::size_t p = 0; p < size(); ++p) {
    if (dim(p) == n) continue;
    bool ok = false;
    for (std::size_t q : above_[p])
      if (dim(q) == n) ok = true;
    if (!ok) return false;
  }
  return true;
}

std::optional<std::size_t> PoicComplex::pure_dim() const {
  if (size() == 0) return std::nullopt;
  std::size_t n = max_dim();
  if (is_pure(n)) return n;
  return std::nullopt;
}

// ---------------------------------------------------------------- linear structures

void check_linear_structure(const PoicComplex& phi, const LinearStructure& x) {
  if (x.maps.size() != phi.size()) throw Error(ErrorCode::DimensionMismatch, "linear structure has the wrong number of maps");
  for (std::size_t p = 0; p < phi.size(); ++p)
    if (x.maps[p].rows() != x.target_rank || x.maps[p].cols() != phi.cone(p).rank())
      throw Error(ErrorCode::DimensionMismatch, "linear map of cone " + phi.label(p) + " has the wrong shape");
  for (const auto& r : phi.relations())
    if (!(x.maps[r.lower] == x.maps[r.upper] * r.matrix))
      throw Error(ErrorCode::NonFunctorial,
                  "linear structure is not natural for " + phi.label(r.lower) + " < " + phi.label(r.upper));
}

// ---------------------------------------------------------------- subcomplexes

Subcomplex full_subcomplex(const PoicComplex& phi, const std::vector<std::size_t>& ids_in) {
  std::vector<std::size_t> ids = ids_in;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<long> pos(phi.size(), -1);
  for (std::size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = static_cast<long>(i);
  for (std::size_t q : ids)
    for (std::size_t p : phi.below(q))
      if (pos[p] < 0) throw Error(ErrorCode::NotSubcomplex, "face " + phi.label(p) + " of " + phi.label(q) + " is missing");
  std::vector<Poic> cones;
  std::vector<std::string> labels;
  for (std::size_t q : ids) {
    cones.push_back(phi.cone(q));
    labels.push_back(phi.label(q));
  }
  std::vector<Relation> rel;
  for (const auto& r : phi.relations())
    if (pos[r.lower] >= 0 && pos[r.upper] >= 0)
      rel.push_back({static_cast<std::size_t>(pos[r.lower]), static_cast<std::size_t>(pos[r.upper]), r.matrix});
  return {PoicComplex::make(std::move(cones), rel, std::move(labels)), ids};
}

Subcomplex skeleton(const PoicComplex& phi, std::size_t k) {
  std::vector<std::size_t> ids;
  for (std::size_t p = 0; p < phi.size(); ++p)
    if (phi.dim(p) <= k) ids.push_back(p);
  return full_subcomplex(phi, ids);
}

Subcomplex closure_subcomplex(const PoicComplex& phi, std::size_t q) {
  std::vector<std::size_t> ids = phi.below(q);
  ids.push_back(q);
  return full_subcomplex(phi, ids);
}

PoicComplex product_complex(const PoicComplex& phi, const PoicComplex& psi) {
  const std::size_t a = phi.size(), b = psi.size();
  std::vector<Poic> cones;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) {
      cones.push_back(product(phi.cone(i), psi.cone(j)));
      labels.push_back("(" + phi.label(i) + "," + psi.label(j) + ")");
    }
  std::vector<Relation> rel;
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t i2 = 0; i2 < a; ++i2) {
      if (!phi.leq(i, i2)) continue;
      for (std::size_t j = 0; j < b; ++j)
        for (std::size_t j2 = 0; j2 < b; ++j2) {
          if (!psi.leq(j, j2) || (i == i2 && j == j2)) continue;
          rel.push_back({product_id(i, j, b), product_id(i2, j2, b),
                         block_diag(phi.face_map(i, i2), psi.face_map(j, j2))});
        }
    }
  return PoicComplex::make(std::move(cones), rel, std::move(labels));
}

LinearStructure product_linear(const PoicComplex& phi, const LinearStructure& x, const PoicComplex& psi,
                               const LinearStructure& y) {
  LinearStructure out;
  out.target_rank = x.target_rank + y.target_rank;
  for (std::size_t i = 0; i < phi.size(); ++i)
    for (std::size_t j = 0; j < psi.size(); ++j) out.maps.push_back(block_diag(x.maps[i], y.maps[j]));
  return out;
}

std::vector<std::size_t> star1(const PoicComplex& phi, std::size_t s) {
  std::vector<std::size_t> out;
  for (std::size_t t : phi.above(s))
    if (phi.dim(t) == phi.dim(s) + 1) out.push_back(t);
  return out;
}

PoicComplex face_complex(const Poic& sigma) {
  std::vector<std::size_t> faces = sigma.retained_faces();
  std::vector<Poic> cones;
  std::vector<IntMatrix> emb;
  std::vector<std::string> labels;
  for (std::size_t f : faces) {
    auto fe = sigma.face_embedding(f);
    cones.push_back(fe.sub);
    emb.push_back(fe.matrix);
    labels.push_back("face" + std::to_string(f));
  }
  std::vector<Relation> rel;
  const auto& cf = sigma.closure_faces();
  for (std::size_t a = 0; a < faces.size(); ++a)
    for (std::size_t b = 0; b < faces.size(); ++b) {
      if (a == b) continue;
      const auto& ta = cf[faces[a]].tight;
      const auto& tb = cf[faces[b]].tight;
      if (!std::includes(ta.begin(), ta.end(), tb.begin(), tb.end())) continue;
      IntMatrix C(emb[b].cols(), emb[a].cols());
      for (std::size_t j = 0; j < emb[a].cols(); ++j) C.set_col(j, *solve_integer(emb[b], emb[a].col(j)));
      rel.push_back({a, b, C});
    }
  return PoicComplex::make(std::move(cones), rel, std::move(labels));
}

// ---------------------------------------------------------------- morphisms

std::string check_complex_morphism(const PoicComplex& phi, const PoicComplex& psi, const ComplexMorphism& f) {
  if (f.cone_map.size() != phi.size() || f.matrices.size() != phi.size()) return "cone map has the wrong size";
  for (std::size_t p = 0; p < phi.size(); ++p) {
    std::size_t q = f.cone_map[p];
    if (q >= psi.size()) return "cone " + phi.label(p) + " maps to an unknown cone";
    const IntMatrix& A = f.matrices[p];
    if (A.rows() != psi.cone(q).rank() || A.cols() != phi.cone(p).rank())
      return "matrix of cone " + phi.label(p) + " has the wrong shape";
    std::string why;
    if (!maps_into(A, phi.cone(p), psi.cone(q), &why)) return "cone " + phi.label(p) + " does not map into " + psi.label(q) + ": " + why;
    auto face = psi.cone(q).face_of_point(A * phi.cone(p).witness());
    if (!face || *face != psi.cone(q).top_face())
      return "image of cone " + phi.label(p) + " lies in a proper face of " + psi.label(q);
  }
  for (const auto& r : phi.relations()) {
    std::size_t a = f.cone_map[r.lower], b = f.cone_map[r.upper];
    if (!psi.leq(a, b)) return "order not preserved for " + phi.label(r.lower) + " < " + phi.label(r.upper);
    if (!(psi.face_map(a, b) * f.matrices[r.lower] == f.matrices[r.upper] * r.matrix))
      return "naturality square fails for " + phi.label(r.lower) + " < " + phi.label(r.upper);
  }
  return "";
}

ComplexMorphism compose(const ComplexMorphism& g, const ComplexMorphism& f) {
  ComplexMorphism out;
  for (std::size_t p = 0; p < f.cone_map.size(); ++p) {
    out.cone_map.push_back(g.cone_map[f.cone_map[p]]);
    out.matrices.push_back(g.matrices[f.cone_map[p]] * f.matrices[p]);
  }
  return out;
}

// ---------------------------------------------------------------- skeletonization

Skeletonization skeletonize(const ThinCategory& cat) {
  const std::size_t n = cat.objects.size();
  std::map<std::pair<std::size_t, std::size_t>, IntMatrix> hom;
  auto insert = [&](std::size_t a, std::size_t b, const IntMatrix& m) {
    auto it = hom.find({a, b});
    if (it == hom.end()) {
      hom[{a, b}] = m;
      return true;
    }
    if (!(it->second == m))
      throw Error(ErrorCode::NotThin, "two distinct morphisms from object " + std::to_string(a) + " to " + std::to_string(b));
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) insert(i, i, IntMatrix::identity(cat.objects[i].rank()));
  for (const auto& m : cat.morphisms) {
    if (m.lower >= n || m.upper >= n) throw Error(ErrorCode::DimensionMismatch, "morphism refers to an unknown object");
    insert(m.lower, m.upper, m.matrix);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::tuple<std::size_t, std::size_t, IntMatrix>> add;
    for (const auto& [k1, m1] : hom)
      for (const auto& [k2, m2] : hom)
        if (k1.second == k2.first) add.emplace_back(k1.first, k2.second, m2 * m1);
    for (auto& [a, b, m] : add)
      if (insert(a, b, m)) changed = true;
  }
  std::vector<std::size_t> rep(n);
  std::iota(rep.begin(), rep.end(), 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (hom.count({i, j}) && hom.count({j, i}) && rep[j] == j) {
        rep[i] = j;
        break;
      }
  std::vector<std::size_t> reps;
  std::vector<long> pos(n, -1);
  for (std::size_t i = 0; i < n; ++i)
    if (rep[i] == i) {
      pos[i] = static_cast<long>(reps.size());
      reps.push_back(i);
    }
  std::vector<Poic> cones;
  for (std::size_t r : reps) cones.push_back(cat.objects[r]);
  std::vector<Relation> rel;
  for (std::size_t a : reps)
    for (std::size_t b : reps)
      if (a != b && hom.count({a, b}))
        rel.push_back({static_cast<std::size_t>(pos[a]), static_cast<std::size_t>(pos[b]), hom.at({a, b})});
  Skeletonization out;
  out.complex = PoicComplex::make(std::move(cones), rel);
  for (std::size_t i = 0; i < n; ++i) {
    out.representative.push_back(static_cast<std::size_t>(pos[rep[i]]));
    out.to_representative.push_back(hom.at({i, rep[i]}));
  }
  return out;
}

// ---------------------------------------------------------------- conification

namespace {

Vec homogenize(const std::vector<Rat>& v) {
  Int den = 1;
  for (const Rat& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  Vec out;
  for (const Rat& x : v) out.push_back(Rat(x * Rat(den)).get_num());
  out.push_back(den);
  return primitive(out);
}

ClosedCone homogenized_cone(std::size_t n, const Polyhedron& p) {
  if (p.vertices.empty()) throw Error(ErrorCode::NotPolyhedralComplex, "cell without vertices");
  std::vector<Vec> gens;
  for (const auto& v : p.vertices) {
    if (v.size() != n) throw Error(ErrorCode::DimensionMismatch, "vertex has the wrong dimension");
    gens.push_back(homogenize(v));
  }
  for (const auto& r : p.rays) {
    if (r.size() != n) throw Error(ErrorCode::DimensionMismatch, "ray has the wrong dimension");
    gens.push_back(concat(r, Vec{0}));
  }
  ClosedCone c = ClosedCone::from_generators(n + 1, gens);
  if (!c.is_pointed()) throw Error(ErrorCode::NotPolyhedralComplex, "cell contains a line");
  return c;
}

Polyhedron slice(const ClosedCone& c) {
  Polyhedron p;
  const std::size_t n = c.ambient_dim() - 1;
  for (const Vec& r : c.rays()) {
    if (r[n] > 0) {
      std::vector<Rat> v;
      for (std::size_t i = 0; i < n; ++i) {
        Rat x(r[i], r[n]);
        x.canonicalize();
        v.push_back(x);
      }
      p.vertices.push_back(v);
    } else {
      p.rays.push_back(Vec(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(n)));
    }
  }
  std::sort(p.vertices.begin(), p.vertices.end());
  std::sort(p.rays.begin(), p.rays.end());
  return p;
}

}  // namespace

Polyhedron canonical_polyhedron(std::size_t n, const Polyhedron& p) { return slice(homogenized_cone(n, p)); }

LinearComplex conify(const PolyhedralComplex& input) {
  const std::size_t n = input.ambient_dim;
  std::vector<ClosedCone> ambient;
  for (const auto& cell : input.cells) ambient.push_back(homogenized_cone(n, cell));
  for (std::size_t i = 0; i < ambient.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (ambient[i] == ambient[j]) throw Error(ErrorCode::NotPolyhedralComplex, "cells " + std::to_string(j) + " and " + std::to_string(i) + " coincide");

  std::vector<Poic> cones{Poic::point()};
  std::vector<std::string> labels{"origin"};
  LinearStructure lin;
  lin.target_rank = n + 1;
  lin.maps.push_back(IntMatrix(n + 1, 0));
  for (std::size_t i = 0; i < ambient.size(); ++i) {
    IntMatrix E = ambient[i].span_basis().transpose();
    ClosedCone local = ambient[i].preimage(E);
    cones.push_back(Poic::from_closure(local, [&](const Vec& w) {
      Vec x = E * w;
      return x[n] > 0 || is_zero(x);
    }));
    labels.push_back("cell" + std::to_string(i));
    lin.maps.push_back(E);
  }
  std::vector<Relation> rel;
  for (std::size_t i = 0; i < ambient.size(); ++i) {
    rel.push_back({0, i + 1, IntMatrix(cones[i + 1].rank(), 0)});
    for (std::size_t j = 0; j < ambient.size(); ++j) {
      if (i == j) continue;
      // cell i is a face of cell j?
      Vec w = ambient[i].interior_point();
      if (!ambient[j].contains(w)) continue;
      if (!(ambient[j].face_containing(w) == ambient[i])) continue;
      const IntMatrix& Ej = lin.maps[j + 1];
      const IntMatrix& Ei = lin.maps[i + 1];
      IntMatrix C(Ej.cols(), Ei.cols());
      for (std::size_t c = 0; c < Ei.cols(); ++c) {
        auto x = solve_integer(Ej, Ei.col(c));
        if (!x) throw Error(ErrorCode::NotPolyhedralComplex, "face lattice mismatch");
        C.set_col(c, *x);
      }
      rel.push_back({i + 1, j + 1, C});
    }
  }
  LinearComplex out;
  try {
    out.complex = PoicComplex::make(std::move(cones), rel, std::move(labels));
  } catch (const Error& e) {
    throw Error(ErrorCode::NotPolyhedralComplex, e.what());
  }
  out.linear = std::move(lin);
  check_linear_structure(out.complex, out.linear);
  return out;
}

PolyhedralComplex slice_at_height_one(const LinearComplex& lc) {
  PolyhedralComplex out;
  out.ambient_dim = lc.linear.target_rank - 1;
  for (std::size_t p = 0; p < lc.complex.size(); ++p) {
    if (lc.complex.dim(p) == 0) continue;
    ClosedCone c = lc.complex.cone(p).closure().image(lc.linear.maps[p]);
    out.cells.push_back(slice(c));
  }
  return out;
}

}  // namespace tropocone

namespace tropocone {

LinearComplex complex_from_ambient_cones(std::size_t n, const std::vector<ClosedCone>& input,
                                         const std::function<bool(const Vec&)>& keep) {
  std::vector<ClosedCone> cones;
  for (const auto& c : input) {
    if (c.ambient_dim() != n) throw Error(ErrorCode::AmbientMismatch, "cone in the wrong ambient space");
    if (!keep(c.interior_point())) continue;
    if (std::find(cones.begin(), cones.end(), c) == cones.end()) cones.push_back(c);
  }
  std::sort(cones.begin(), cones.end(), [](const ClosedCone& a, const ClosedCone& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a < b;
  });
  LinearComplex out;
  out.linear.target_rank = n;
  std::vector<Poic> poics;
  std::vector<std::string> labels;
  for (const auto& c : cones) {
    IntMatrix E = c.span_basis().transpose();
    poics.push_back(Poic::from_closure(c.preimage(E), [&](const Vec& w) { return keep(E * w); }));
    out.linear.maps.push_back(E);
    std::string label = "cone[";
    for (std::size_t i = 0; i < c.rays().size(); ++i) label += (i ? "," : "") + vec_to_string(c.rays()[i]);
    labels.push_back(label + "]");
  }
  std::vector<Relation> rel;
  for (std::size_t i = 0; i < cones.size(); ++i)
    for (std::size_t j = 0; j < cones.size(); ++j) {
      if (i == j || cones[i].dim() >= cones[j].dim()) continue;
      Vec w = cones[i].interior_point();
      if (!cones[j].contains(w) || !(cones[j].face_containing(w) == cones[i])) continue;
      const IntMatrix& Ej = out.linear.maps[j];
      const IntMatrix& Ei = out.linear.maps[i];
      IntMatrix C(Ej.cols(), Ei.cols());
      for (std::size_t c = 0; c < Ei.cols(); ++c) C.set_col(c, *solve_integer(Ej, Ei.col(c)));
      rel.push_back({i, j, C});
    }
  out.complex = PoicComplex::make(std::move(poics), rel, std::move(labels));
  return out;
}

LinearComplex fan_complex(std::size_t n, const std::vector<std::vector<Vec>>& maximal_cones,
                          const std::function<bool(const Vec&)>& keep) {
  std::vector<ClosedCone> all;
  for (const auto& gens : maximal_cones) {
    ClosedCone c = ClosedCone::from_generators(n, gens);
    IntMatrix E = c.span_basis().transpose();
    Poic local = Poic::from_closure(c.preimage(E), [](const Vec&) { return true; });
    for (std::size_t f = 0; f < local.closure_faces().size(); ++f) all.push_back(local.face_cone(f).image(E));
  }
  return complex_from_ambient_cones(n, all, keep);
}

LinearComplex fan_complex(std::size_t n, const std::vector<std::vector<Vec>>& maximal_cones) {
  return fan_complex(n, maximal_cones, [](const Vec&) { return true; });
}

}  // namespace tropocone
