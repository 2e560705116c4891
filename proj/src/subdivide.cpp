#include "tropocone/subdivide.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tropocone/error.hpp"

namespace tropocone {

namespace {

IntMatrix span_embedding(const ClosedCone& c) { return c.span_basis().transpose(); }

// M with A * M = B, solved column by column over the integers.
std::optional<IntMatrix> solve_columns(const IntMatrix& A, const IntMatrix& B) {
  IntMatrix M(A.cols(), B.cols());
  for (std::size_t c = 0; c < B.cols(); ++c) {
    auto x = solve_integer(A, B.col(c));
    if (!x) return std::nullopt;
    M.set_col(c, *x);
  }
  return M;
}

// All faces of a closed cone, in its ambient coordinates.
std::vector<ClosedCone> closed_faces(const ClosedCone& c) {
  IntMatrix E = span_embedding(c);
  Poic local = Poic::from_closure(c.preimage(E), [](const Vec&) { return true; });
  std::vector<ClosedCone> out;
  for (std::size_t f = 0; f < local.closure_faces().size(); ++f) out.push_back(local.face_cone(f).image(E));
  return out;
}

bool in_relative_interior_of(const Poic& c, const Vec& x) {
  auto f = c.face_of_point(x);
  return f && *f == c.top_face();
}

Vec sum_of(const std::vector<Vec>& vs, std::size_t n) {
  Vec s(n, Int(0));
  for (const auto& v : vs) s = add(s, v);
  return s;
}

}  // namespace

Subdivision identity_subdivision(const PoicComplex& phi) {
  Subdivision s;
  s.source = phi;
  s.target = phi;
  for (std::size_t p = 0; p < phi.size(); ++p) {
    s.cone_map.push_back(p);
    s.matrices.push_back(IntMatrix::identity(phi.cone(p).rank()));
  }
  return s;
}

Subdivision assemble_subdivision(const PoicComplex& target, const std::vector<std::vector<ClosedCone>>& pieces) {
  if (pieces.size() != target.size()) throw Error(ErrorCode::DimensionMismatch, "one piece list per target cone expected");
  struct Piece {
    std::size_t q;
    ClosedCone cone;
  };
  std::vector<Piece> all;
  for (std::size_t q = 0; q < target.size(); ++q) {
    std::vector<ClosedCone> list = pieces[q];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    for (auto& c : list) {
      if (c.ambient_dim() != target.cone(q).rank())
        throw Error(ErrorCode::DimensionMismatch, "piece over " + target.label(q) + " has the wrong ambient dimension");
      if (!in_relative_interior_of(target.cone(q), c.interior_point()))
        throw Error(ErrorCode::InvalidSubdivision,
                    "piece " + c.to_string() + " is not in the relative interior of " + target.label(q));
      all.push_back({q, std::move(c)});
    }
  }
  std::stable_sort(all.begin(), all.end(), [](const Piece& a, const Piece& b) {
    if (a.cone.dim() != b.cone.dim()) return a.cone.dim() < b.cone.dim();
    return a.q < b.q;
  });

  std::map<std::pair<std::size_t, ClosedCone>, std::size_t> index;
  std::vector<IntMatrix> emb;
  std::vector<Poic> poics;
  std::vector<std::string> labels;
  std::map<std::size_t, std::size_t> count;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& [q, c] = all[i];
    index[{q, c}] = i;
    IntMatrix E = span_embedding(c);
    const Poic& tq = target.cone(q);
    poics.push_back(Poic::from_closure(c.preimage(E), [&](const Vec& w) {
      auto f = tq.face_of_point(E * w);
      return f && tq.closure_faces()[*f].retained;
    }));
    emb.push_back(E);
    labels.push_back(target.label(q) + "/" + std::to_string(count[q]++));
  }

  std::vector<Relation> rel;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const std::size_t q = all[i].q;
    const Poic& tq = target.cone(q);
    const Poic& pc = poics[i];
    for (std::size_t f : pc.retained_faces()) {
      if (f == pc.top_face()) continue;
      ClosedCone G = pc.face_cone(f).image(emb[i]);
      std::size_t tau = *tq.face_of_point(emb[i] * pc.closure_faces()[f].witness);
      std::size_t q2 = target.cone_of_face(q, tau);
      IntMatrix F = target.face_map(q2, q);
      ClosedCone G2 = q2 == q ? G : G.preimage(F);
      auto it = index.find({q2, G2});
      if (it == index.end())
        throw Error(ErrorCode::InvalidSubdivision, "face " + G2.to_string() + " of piece " + labels[i] +
                                                       " is not a piece over " + target.label(q2));
      std::size_t j = it->second;
      auto M = solve_columns(emb[i], F * emb[j]);
      if (!M) throw Error(ErrorCode::InvalidSubdivision, "face lattice of " + labels[j] + " not inside " + labels[i]);
      rel.push_back({j, i, *M});
    }
  }

  Subdivision s;
  s.target = target;
  s.source = PoicComplex::make(std::move(poics), rel, std::move(labels));
  for (std::size_t i = 0; i < all.size(); ++i) {
    s.cone_map.push_back(all[i].q);
    s.matrices.push_back(emb[i]);
  }
  return s;
}

std::vector<ClosedCone> pieces_over(const Subdivision& s, std::size_t q) {
  std::vector<ClosedCone> out;
  for (std::size_t p = 0; p < s.source.size(); ++p)
    if (s.cone_map[p] == q) out.push_back(s.source.cone(p).closure().image(s.matrices[p]));
  return out;
}

SubdivisionReport validate_subdivision(const Subdivision& s) {
  SubdivisionReport r;
  auto fail = [&](bool& flag, const std::string& msg) {
    flag = false;
    r.violations.push_back(msg);
  };
  if (s.cone_map.size() != s.source.size() || s.matrices.size() != s.source.size()) {
    fail(r.functorial, "cone map or matrices have the wrong size");
    return r;
  }
  for (std::size_t p = 0; p < s.source.size(); ++p) {
    if (s.cone_map[p] >= s.target.size()) {
      fail(r.functorial, "cone " + s.source.label(p) + " maps to an unknown cone");
      return r;
    }
    const IntMatrix& A = s.matrices[p];
    if (A.rows() != s.target.cone(s.cone_map[p]).rank() || A.cols() != s.source.cone(p).rank()) {
      fail(r.functorial, "matrix of " + s.source.label(p) + " has the wrong shape");
      return r;
    }
  }
  std::string m = check_complex_morphism(s.source, s.target, s.morphism());
  if (!m.empty()) fail(r.functorial, m);
  for (std::size_t p = 0; p < s.source.size(); ++p) {
    const IntMatrix& A = s.matrices[p];
    if (rank(A) != A.cols()) fail(r.functorial, "matrix of " + s.source.label(p) + " is not injective");
    else if (A.rows() == A.cols() && abs(determinant(A)) != 1)
      fail(r.functorial, "matrix of " + s.source.label(p) + " is not a lattice isomorphism");
  }
  if (!r.functorial) return r;

  // Partition of every target cone.
  for (std::size_t q = 0; q < s.target.size(); ++q) {
    std::vector<ClosedCone> P = pieces_over(s, q);
    const ClosedCone& T = s.target.cone(q).closure();
    if (P.empty()) {
      fail(r.partition, "target cone " + s.target.label(q) + " has no preimage");
      continue;
    }
    for (std::size_t a = 0; a < P.size(); ++a)
      for (std::size_t b = a + 1; b < P.size(); ++b) {
        Vec w = P[a].intersect(P[b]).interior_point();
        if (P[a].relative_interior_contains(w) && P[b].relative_interior_contains(w))
          fail(r.partition, "relative interiors overlap over " + s.target.label(q) + " at " + vec_to_string(w));
      }
    std::set<ClosedCone> present(P.begin(), P.end());
    std::vector<ClosedCone> top;
    for (const auto& c : P)
      if (c.dim() == T.dim()) top.push_back(c);
    if (top.empty()) {
      fail(r.partition, "no full-dimensional piece over " + s.target.label(q));
      continue;
    }
    std::set<ClosedCone> walls_done;
    for (const auto& c : top)
      for (const auto& G : closed_faces(c)) {
        Vec w = G.interior_point();
        if (!T.relative_interior_contains(w)) continue;
        if (!present.count(G))
          fail(r.partition, "point " + vec_to_string(w) + " of " + s.target.label(q) + " is covered by no piece");
        if (G.dim() + 1 != T.dim() || walls_done.count(G)) continue;
        walls_done.insert(G);
        std::size_t sides = 0;
        for (const auto& c2 : top)
          if (c2.contains(w) && c2.face_containing(w) == G) ++sides;
        if (sides != 2)
          fail(r.partition, "wall through " + vec_to_string(w) + " of " + s.target.label(q) + " bounds " +
                                std::to_string(sides) + " pieces");
      }
  }

  // Face lifting.
  for (std::size_t t = 0; t < s.source.size(); ++t) {
    std::size_t St = s.cone_map[t];
    const Poic& target = s.target.cone(St);
    ClosedCone image = s.source.cone(t).closure().image(s.matrices[t]);
    for (std::size_t b : s.target.below(St)) {
      // Only faces met by the closure of the image need a lift.
      std::size_t tau = s.target.face_index(b, St);
      Vec w = image.intersect(target.face_cone(tau)).interior_point();
      if (target.face_of_point(w) != tau) continue;
      bool found = false;
      for (std::size_t q : s.source.below(t))
        if (s.cone_map[q] == b) found = true;
      if (!found) fail(r.face_lifting, "relation " + s.target.label(b) + " < " + s.target.label(St) +
                                           " does not lift below " + s.source.label(t));
    }
  }
  return r;
}

Subdivision stellar(const PoicComplex& phi, std::size_t s, const Vec& ray) {
  if (s >= phi.size()) throw Error(ErrorCode::DimensionMismatch, "unknown cone");
  const Poic& cs = phi.cone(s);
  if (ray.size() != cs.rank()) throw Error(ErrorCode::DimensionMismatch, "ray has the wrong length");
  if (cs.dim() == 0 || !in_relative_interior_of(cs, ray))
    throw Error(ErrorCode::RayNotInterior, vec_to_string(ray) + " is not in the relative interior of " + phi.label(s));
  Vec r = primitive(ray);
  if (cs.dim() == 1 && cs.is_pointed()) return identity_subdivision(phi);

  std::vector<std::vector<ClosedCone>> pieces(phi.size());
  for (std::size_t q = 0; q < phi.size(); ++q) {
    const Poic& cq = phi.cone(q);
    if (!phi.leq(s, q)) {
      pieces[q] = {cq.closure()};
      continue;
    }
    if (!cq.is_pointed()) throw Error(ErrorCode::Unsupported, "stellar subdivision of a cone with lineality");
    const std::size_t top = cq.top_face();
    const Vec& wG = cq.closure_faces()[phi.face_index(s, q)].witness;
    Vec r2 = phi.face_map(s, q) * r;
    for (std::size_t f = 0; f < cq.closure_faces().size(); ++f) {
      if (f == top) continue;
      const Vec& wF = cq.closure_faces()[f].witness;
      if (cq.face_cone(f).contains(wG)) continue;
      if (cq.face_of_point(add(wF, wG)) != top) continue;
      std::vector<Vec> gens = cq.face_rays(f);
      gens.push_back(r2);
      pieces[q].push_back(ClosedCone::from_generators(cq.rank(), gens));
    }
  }
  return assemble_subdivision(phi, pieces);
}

Subdivision ord_subdivision(const PoicComplex& phi) {
  std::vector<std::vector<ClosedCone>> pieces(phi.size());
  for (std::size_t q = 0; q < phi.size(); ++q) {
    const Poic& cq = phi.cone(q);
    if (!cq.is_pointed()) throw Error(ErrorCode::Unsupported, "barycentric subdivision of a cone with lineality");
    const std::size_t n = cq.rank();
    if (cq.dim() == 0) {
      pieces[q] = {ClosedCone::origin(0)};
      continue;
    }
    const auto& faces = cq.closure_faces();
    std::vector<Vec> centre(faces.size());
    for (std::size_t f = 0; f < faces.size(); ++f)
      if (faces[f].dim > 0) centre[f] = sum_of(cq.face_rays(f), n);
    // Chains F_1 < ... < F_k = top of non-zero faces, grown downwards.
    std::vector<std::size_t> chain{cq.top_face()};
    auto grow = [&](auto&& self) -> void {
      std::vector<Vec> gens;
      for (std::size_t f : chain) gens.push_back(centre[f]);
      pieces[q].push_back(ClosedCone::from_generators(n, gens));
      ClosedCone last = cq.face_cone(chain.back());
      for (std::size_t f = 0; f < faces.size(); ++f) {
        if (faces[f].dim == 0 || faces[f].dim >= faces[chain.back()].dim) continue;
        if (!last.contains(faces[f].witness)) continue;
        chain.push_back(f);
        self(self);
        chain.pop_back();
      }
    };
    grow(grow);
  }
  return assemble_subdivision(phi, pieces);
}

bool same_complex(const PoicComplex& a, const PoicComplex& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t p = 0; p < a.size(); ++p)
    if (!same_cone(a.cone(p), b.cone(p))) return false;
  for (std::size_t p = 0; p < a.size(); ++p)
    for (std::size_t q = 0; q < a.size(); ++q) {
      if (a.less(p, q) != b.less(p, q)) return false;
      if (a.less(p, q) && !(a.face_map(p, q) == b.face_map(p, q))) return false;
    }
  return true;
}

Refinement honest_subdivision_refine(const std::vector<Subdivision>& inputs) {
  if (inputs.empty()) throw Error(ErrorCode::AmbientMismatch, "no subdivisions to refine");
  const PoicComplex& target = inputs[0].target;
  for (const auto& s : inputs)
    if (!same_complex(s.target, target)) throw Error(ErrorCode::AmbientMismatch, "subdivisions of different complexes");

  std::vector<std::vector<ClosedCone>> pieces(target.size());
  for (std::size_t q = 0; q < target.size(); ++q) {
    std::vector<ClosedCone> cur = pieces_over(inputs[0], q);
    for (std::size_t i = 1; i < inputs.size(); ++i) cur = overlay_pieces(cur, pieces_over(inputs[i], q));
    pieces[q] = std::move(cur);
  }

  Refinement out;
  out.common = assemble_subdivision(target, pieces);
  for (const auto& s : inputs) out.to_inputs.push_back(refinement_map(out.common, s));
  return out;
}

std::vector<ClosedCone> overlay_pieces(const std::vector<ClosedCone>& a, const std::vector<ClosedCone>& b) {
  std::vector<ClosedCone> out;
  for (const auto& x : a)
    for (const auto& y : b) {
      ClosedCone c = x.intersect(y);
      Vec w = c.interior_point();
      if (x.relative_interior_contains(w) && y.relative_interior_contains(w)) out.push_back(c);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ClosedCone> all_faces(const ClosedCone& c) { return closed_faces(c); }

ComplexMorphism refinement_map(const Subdivision& fine, const Subdivision& coarse) {
  if (!same_complex(fine.target, coarse.target))
    throw Error(ErrorCode::AmbientMismatch, "subdivisions of different complexes");
  ComplexMorphism f;
  for (std::size_t p = 0; p < fine.source.size(); ++p) {
    std::size_t q = fine.cone_map[p];
    Vec w = fine.matrices[p] * fine.source.cone(p).witness();
    std::optional<std::size_t> hit;
    for (std::size_t t = 0; t < coarse.source.size() && !hit; ++t)
      if (coarse.cone_map[t] == q &&
          coarse.source.cone(t).closure().image(coarse.matrices[t]).relative_interior_contains(w))
        hit = t;
    if (!hit) throw Error(ErrorCode::InvalidSubdivision, "refinement piece " + fine.source.label(p) + " is not covered");
    auto M = solve_columns(coarse.matrices[*hit], fine.matrices[p]);
    if (!M)
      throw Error(ErrorCode::InvalidSubdivision, "refinement piece lattice is not inside " + coarse.source.label(*hit));
    f.cone_map.push_back(*hit);
    f.matrices.push_back(*M);
  }
  return f;
}

Subdivision relative_subdivision(const Subdivision& fine, const Subdivision& coarse) {
  ComplexMorphism f = refinement_map(fine, coarse);
  return {fine.source, coarse.source, f.cone_map, f.matrices};
}

LinearStructure pullback_linear(const Subdivision& s, const LinearStructure& y) {
  LinearStructure out{y.target_rank, {}};
  for (std::size_t p = 0; p < s.source.size(); ++p) out.maps.push_back(y.maps[s.cone_map[p]] * s.matrices[p]);
  return out;
}

Weight pullback(const Subdivision& s, const Weight& w) { return pullback_along(s.source, s.target, s.cone_map, w); }

LinearComplex honest_form(const Subdivision& s, const LinearStructure& y) {
  LinearStructure x = pullback_linear(s, y);
  std::vector<ClosedCone> cones;
  for (std::size_t p = 0; p < s.source.size(); ++p) {
    if (rank(x.maps[p]) != s.source.dim(p))
      throw Error(ErrorCode::Unsupported, "linear structure is not injective on " + s.source.label(p));
    cones.push_back(s.source.cone(p).closure().image(x.maps[p]));
  }
  auto keep = [&](const Vec& v) {
    for (const auto& c : cones)
      if (c.relative_interior_contains(v)) return true;
    return false;
  };
  return complex_from_ambient_cones(y.target_rank, cones, keep);
}

namespace {

// Whether the relative interior of tau (coordinates of target cone q) meets the
// open image of some source cone lying over a face of q.  Image closures are
// cached per (source cone, target cone).
class ImageCache {
 public:
  ImageCache(const PoicComplex& phi, const PoicComplex& psi, const ComplexMorphism& p) : phi_(phi), psi_(psi), p_(p) {}

  bool meets_image(std::size_t q, const ClosedCone& tau) {
    // Open images over a face of q lie in its relative interior, so only the
    // face of q containing the relative interior of tau can meet it.
    const Poic& target = psi_.cone(q);
    auto face = target.face_of_point(tau.interior_point());
    if (!face || !target.closure_faces()[*face].retained) return false;
    const std::size_t over = psi_.cone_of_face(q, *face);
    for (std::size_t s = 0; s < phi_.size(); ++s) {
      if (p_.cone_map[s] != over) continue;
      auto key = std::make_pair(s, q);
      auto it = images_.find(key);
      if (it == images_.end())
        it = images_.emplace(key, phi_.cone(s).closure().image(psi_.face_map(p_.cone_map[s], q) * p_.matrices[s])).first;
      const ClosedCone& I = it->second;
      Vec x = tau.intersect(I).interior_point();
      if (tau.relative_interior_contains(x) && I.relative_interior_contains(x)) return true;
    }
    return false;
  }

 private:
  const PoicComplex& phi_;
  const PoicComplex& psi_;
  const ComplexMorphism& p_;
  std::map<std::pair<std::size_t, std::size_t>, ClosedCone> images_;
};

}  // namespace

ProperReport is_weakly_proper(const PoicComplex& phi, const PoicComplex& psi, const ComplexMorphism& p) {
  ProperReport rep;
  ImageCache cache(phi, psi, p);
  for (std::size_t s = 0; s < phi.size(); ++s) {
    const IntMatrix& A = p.matrices[s];
    if (rank(A) != phi.dim(s)) continue;
    const Poic& source = phi.cone(s);
    const Poic& target = psi.cone(p.cone_map[s]);
    // A is injective, so the faces of the image closure are the images of the
    // closure faces of s, and such a face lifts exactly when it is retained.
    for (std::size_t f = 0; f < source.closure_faces().size(); ++f) {
      const auto& face = source.closure_faces()[f];
      if (f == source.top_face() || face.retained) continue;
      Vec x = A * face.witness;
      if (!in_relative_interior_of(target, x) && !cache.meets_image(p.cone_map[s], source.face_cone(f).image(A)))
        continue;
      rep.ok = false;
      rep.witness = "face of the image of " + phi.label(s) + " through " + vec_to_string(x) + " does not lift";
      return rep;
    }
  }
  return rep;
}

ProperReport is_proper_bounded(const PoicComplex& phi, const PoicComplex& psi, const ComplexMorphism& p) {
  ProperReport rep = is_weakly_proper(phi, psi, p);
  if (!rep.ok) return rep;
  std::vector<std::pair<std::string, Subdivision>> subs;
  try {
    subs.emplace_back("barycentric subdivision", ord_subdivision(phi));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Unsupported) throw;
  }
  for (std::size_t s = 0; s < phi.size(); ++s) {
    const Poic& c = phi.cone(s);
    if (c.dim() < 2 || !c.is_pointed()) continue;
    bool pointed_above = true;
    for (std::size_t q : phi.above(s)) pointed_above &= phi.cone(q).is_pointed();
    if (!pointed_above) continue;
    Vec r = primitive(sum_of(c.closure().rays(), c.rank()));
    subs.emplace_back("stellar subdivision of " + phi.label(s), stellar(phi, s, r));
  }
  for (const auto& [name, sub] : subs) {
    ProperReport r = is_weakly_proper(sub.source, psi, compose(p, sub.morphism()));
    if (!r.ok) {
      r.witness = name + ": " + r.witness;
      return r;
    }
  }
  return rep;
}

std::optional<std::size_t> pfine_match(const PoicComplex& phi, const ComplexMorphism& p, const Subdivision& s,
                                       std::size_t c) {
  const IntMatrix& A = p.matrices[c];
  if (rank(A) != phi.dim(c)) return std::nullopt;
  const std::size_t q = p.cone_map[c];
  ClosedCone D = phi.cone(c).closure().image(A);
  for (std::size_t t = 0; t < s.source.size(); ++t)
    if (s.cone_map[t] == q && s.source.dim(t) == phi.dim(c) && s.source.cone(t).closure().image(s.matrices[t]) == D)
      return t;
  return std::nullopt;
}

Subdivision compose_subdivisions(const Subdivision& outer, const Subdivision& inner) {
  if (!same_complex(inner.target, outer.source))
    throw Error(ErrorCode::AmbientMismatch, "inner subdivision does not refine the outer source");
  Subdivision s;
  s.source = inner.source;
  s.target = outer.target;
  for (std::size_t p = 0; p < inner.source.size(); ++p) {
    std::size_t mid = inner.cone_map[p];
    s.cone_map.push_back(outer.cone_map[mid]);
    s.matrices.push_back(outer.matrices[mid] * inner.matrices[p]);
  }
  return s;
}

namespace {

// The images of the injective source cones, when they already partition every target cone.
std::optional<Subdivision> subdivision_by_images(const PoicComplex& phi, const PoicComplex& psi,
                                                 const ComplexMorphism& p) {
  std::vector<std::vector<ClosedCone>> pieces(psi.size());
  for (std::size_t s = 0; s < phi.size(); ++s)
    if (rank(p.matrices[s]) == phi.dim(s))
      pieces[p.cone_map[s]].push_back(phi.cone(s).closure().image(p.matrices[s]));
  try {
    Subdivision out = assemble_subdivision(psi, pieces);
    if (validate_subdivision(out).valid()) return out;
  } catch (const Error&) {
  }
  return std::nullopt;
}

}  // namespace

Subdivision pfine_refinement(const PoicComplex& phi, const PoicComplex& psi, const ComplexMorphism& p) {
  if (auto direct = subdivision_by_images(phi, psi, p)) return *direct;
  // Rays of the image closures that lie in cones of psi of dimension >= 2.
  struct ImageRay {
    std::size_t cone;
    Vec ray;
  };
  std::vector<ImageRay> rays;
  for (std::size_t s = 0; s < phi.size(); ++s) {
    const IntMatrix& A = p.matrices[s];
    if (phi.dim(s) == 0 || rank(A) != phi.dim(s)) continue;
    const std::size_t q = p.cone_map[s];
    const Poic& T = psi.cone(q);
    ClosedCone D = phi.cone(s).closure().image(A);
    if (!D.is_pointed()) throw Error(ErrorCode::Unsupported, "image of " + phi.label(s) + " has lineality");
    for (const Vec& v : D.rays()) {
      auto tau = T.face_of_point(v);
      if (!tau || !T.closure_faces()[*tau].retained) continue;
      std::size_t q2 = psi.cone_of_face(q, *tau);
      if (psi.dim(q2) < 2) continue;
      auto v2 = solve_integer(psi.face_map(q2, q), v);
      rays.push_back({q2, primitive(*v2)});
    }
  }
  std::stable_sort(rays.begin(), rays.end(), [&](const ImageRay& a, const ImageRay& b) {
    if (psi.dim(a.cone) != psi.dim(b.cone)) return psi.dim(a.cone) > psi.dim(b.cone);
    if (a.cone != b.cone) return a.cone < b.cone;
    return a.ray < b.ray;
  });
  rays.erase(std::unique(rays.begin(), rays.end(),
                         [](const ImageRay& a, const ImageRay& b) { return a.cone == b.cone && a.ray == b.ray; }),
             rays.end());

  Subdivision cur = identity_subdivision(psi);
  for (const auto& [q, v] : rays) {
    std::optional<std::size_t> hit;
    for (std::size_t t = 0; t < cur.source.size() && !hit; ++t)
      if (cur.cone_map[t] == q &&
          cur.source.cone(t).closure().image(cur.matrices[t]).relative_interior_contains(v))
        hit = t;
    if (!hit || cur.source.dim(*hit) == 1) continue;
    auto x = solve_integer(cur.matrices[*hit], v);
    cur = compose_subdivisions(cur, stellar(cur.source, *hit, primitive(*x)));
  }
  for (std::size_t c = 0; c < phi.size(); ++c)
    if (rank(p.matrices[c]) == phi.dim(c) && !pfine_match(phi, p, cur, c))
      throw Error(ErrorCode::NotPFine, "the image of " + phi.label(c) + " is not a single cone of the refinement");
  return cur;
}

Weight pushforward(const PoicComplex& phi, const ComplexMorphism& p, const Subdivision& s, const Weight& w) {
  Weight out{w.dim, {}};
  for (std::size_t c = 0; c < phi.size(); ++c) {
    if (phi.dim(c) != w.dim || w.at(c) == 0) continue;
    if (rank(p.matrices[c]) != phi.dim(c)) continue;
    auto t = pfine_match(phi, p, s, c);
    if (!t) throw Error(ErrorCode::NotPFine, "no cone of the subdivision matches the image of " + phi.label(c));
    auto X = solve_columns(s.matrices[*t], p.matrices[c]);
    if (!X) throw Error(ErrorCode::InvalidSubdivision, "image lattice of " + phi.label(c) + " is not inside its match");
    out.values[*t] += w.at(c) * abs(determinant(*X));
  }
  return out.normalized();
}

bool cycle_equal(const Cycle& a, const Cycle& b) {
  if (!same_complex(a.subdivision.target, b.subdivision.target))
    throw Error(ErrorCode::IncomparableSubdivisions, "cycles live on different complexes");
  if (a.weight.dim != b.weight.dim) return a.weight.normalized().values.empty() && b.weight.normalized().values.empty();
  Refinement r = honest_subdivision_refine({a.subdivision, b.subdivision});
  Weight wa = pullback_along(r.common.source, a.subdivision.source, r.to_inputs[0].cone_map, a.weight);
  Weight wb = pullback_along(r.common.source, b.subdivision.source, r.to_inputs[1].cone_map, b.weight);
  return wa == wb;
}

}  // namespace tropocone
