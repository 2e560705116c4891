#include "tropocone/fibration.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "tropocone/error.hpp"

namespace tropocone {

namespace {

std::optional<IntMatrix> unimodular_inverse(const IntMatrix& a) {
  if (a.rows() != a.cols() || abs(determinant(a)) != 1) return std::nullopt;
  IntMatrix inv(a.rows(), a.rows());
  for (std::size_t c = 0; c < a.rows(); ++c) inv.set_col(c, *solve_integer(a, unit_vector(a.rows(), c)));
  return inv;
}

std::vector<ClosedCone> transport(const std::vector<ClosedCone>& list, const IntMatrix& a) {
  std::vector<ClosedCone> out;
  for (const auto& c : list) out.push_back(c.image(a));
  return out;
}

std::vector<ClosedCone> pull_back(const std::vector<ClosedCone>& list, const IntMatrix& a) {
  std::vector<ClosedCone> out;
  for (const auto& c : list) out.push_back(c.preimage(a));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ClosedCone> closures_over(const Subdivision& s, std::size_t p) {
  std::vector<ClosedCone> out;
  for (const auto& pc : pieces_of(s, p)) out.push_back(pc.closure);
  return out;
}

}  // namespace

LinearComplex Fibration::linear_complex() const {
  if (!linear) throw Error(ErrorCode::Unsupported, "fibration source has no linear structure");
  return {source, *linear};
}

Fibration make_fibration(PoicComplex source, std::optional<LinearStructure> linear, PoicSpace target,
                         std::vector<std::size_t> object_map, std::vector<IntMatrix> transform) {
  Fibration f;
  f.source = std::move(source);
  f.linear = std::move(linear);
  f.target = std::move(target);
  f.object_map = std::move(object_map);
  f.transform = std::move(transform);
  const PoicComplex& phi = f.source;
  if (f.object_map.size() != phi.size() || f.transform.size() != phi.size())
    throw Error(ErrorCode::DimensionMismatch, "one object and one transform per source cone expected");
  if (f.linear) check_linear_structure(phi, *f.linear);
  std::vector<IntMatrix> inverse;
  for (std::size_t p = 0; p < phi.size(); ++p) {
    if (f.object_map[p] >= f.target.size())
      throw Error(ErrorCode::InvalidFibration, "cone " + phi.label(p) + " maps to an unknown object");
    const IntMatrix& t = f.transform[p];
    if (t.cols() != phi.cone(p).rank() || t.rows() != f.target.object(f.object_map[p]).rank())
      throw Error(ErrorCode::InvalidFibration, "transform of " + phi.label(p) + " has the wrong shape");
    auto inv = unimodular_inverse(t);
    if (!inv) throw Error(ErrorCode::InvalidFibration, "transform of " + phi.label(p) + " is not unimodular");
    inverse.push_back(*inv);
  }
  for (const auto& r : phi.relations()) {
    IntMatrix m = f.transform[r.upper] * r.matrix * inverse[r.lower];
    auto hit = f.target.find(f.object_map[r.lower], f.object_map[r.upper], m);
    if (!hit)
      throw Error(ErrorCode::InvalidFibration,
                  "face relation " + phi.label(r.lower) + " < " + phi.label(r.upper) + " has no image morphism");
    f.relation_map[{r.lower, r.upper}] = *hit;
  }
  return f;
}

FibrationReport validate_fibration(const Fibration& fib) {
  FibrationReport rep;
  const PoicComplex& phi = fib.source;
  const PoicSpace& x = fib.target;

  std::set<std::size_t> hit;
  for (std::size_t o : fib.object_map) hit.insert(x.class_of(o));
  for (std::size_t c = 0; c < x.classes().size(); ++c)
    if (!hit.count(c)) {
      rep.essentially_surjective = false;
      rep.violations.push_back("no cone maps to the class of " + x.label(x.classes()[c].front()));
    }

  for (std::size_t p = 0; p < phi.size(); ++p) {
    const Poic& src = phi.cone(p);
    const Poic& dst = x.object(fib.object_map[p]);
    const IntMatrix& t = fib.transform[p];
    bool ok = abs(determinant(t)) == 1 && src.closure().image(t) == dst.closure();
    for (std::size_t f : src.retained_faces()) {
      if (!ok) break;
      auto g = dst.face_of_point(t * src.closure_faces()[f].witness);
      ok = g && dst.closure_faces()[*g].retained;
    }
    if (!ok) {
      rep.interiors = false;
      rep.violations.push_back("transform of " + phi.label(p) + " does not identify it with " +
                               x.label(fib.object_map[p]));
    }
  }

  for (std::size_t p = 0; p < phi.size(); ++p) {
    const std::size_t xp = fib.object_map[p];
    std::vector<std::size_t> ups{p};
    ups.insert(ups.end(), phi.above(p).begin(), phi.above(p).end());
    for (std::size_t m = 0; m < x.morphisms().size(); ++m) {
      const SpaceMorphism& f = x.morphism(m);
      if (f.source != xp) continue;
      std::size_t count = 0;
      for (std::size_t q : ups) {
        std::size_t h = q == p ? x.identity(xp) : fib.relation_map.at({p, q});
        for (std::size_t g : x.isomorphisms(fib.object_map[q], f.target))
          if (x.compose(g, h) == m) ++count;
      }
      rep.lift_counts[{p, m}] = count;
      if (count == 0) {
        rep.lifting = false;
        rep.violations.push_back("morphism " + x.label(f.source) + " -> " + x.label(f.target) + " out of the image of " +
                                 phi.label(p) + " does not lift");
      }
    }
  }
  return rep;
}

Fibration identity_fibration(const PoicComplex& phi) {
  std::vector<std::size_t> objects(phi.size());
  std::iota(objects.begin(), objects.end(), 0);
  std::vector<IntMatrix> transform;
  for (std::size_t p = 0; p < phi.size(); ++p) transform.push_back(IntMatrix::identity(phi.cone(p).rank()));
  return make_fibration(phi, std::nullopt, space_from_complex(phi), objects, transform);
}

Fibration identity_fibration(const LinearComplex& lc) {
  Fibration f = identity_fibration(lc.complex);
  f.linear = lc.linear;
  return f;
}

std::vector<Piece> pieces_of(const Subdivision& s, std::size_t p) {
  std::vector<Piece> out;
  for (std::size_t t = 0; t < s.source.size(); ++t)
    if (s.cone_map[t] == p) out.push_back({t, s.source.cone(t).closure().image(s.matrices[t])});
  return out;
}

CompatibilityReport check_compatibility(const Fibration& fib, const Subdivision& s) {
  if (!same_complex(s.target, fib.source))
    throw Error(ErrorCode::AmbientMismatch, "subdivision is not of the fibration source");
  CompatibilityReport rep;
  const PoicComplex& phi = fib.source;
  const PoicSpace& x = fib.target;
  std::vector<std::vector<Piece>> pieces(phi.size());
  for (std::size_t p = 0; p < phi.size(); ++p) pieces[p] = pieces_of(s, p);
  for (std::size_t p = 0; p < phi.size(); ++p)
    for (std::size_t q = 0; q < phi.size(); ++q)
      for (std::size_t m : x.isomorphisms(fib.object_map[p], fib.object_map[q])) {
        rep.triples.push_back({p, q, m});
        std::map<ClosedCone, std::size_t> at_q;
        for (const auto& pc : pieces[q]) at_q[pc.closure.image(fib.transform[q])] = pc.cone;
        const IntMatrix a = x.morphism(m).matrix * fib.transform[p];
        std::map<std::size_t, std::size_t> b;
        for (const auto& pc : pieces[p]) {
          auto it = at_q.find(pc.closure.image(a));
          if (it == at_q.end()) {
            if (rep.compatible)
              rep.witness = "piece " + s.source.label(pc.cone) + " over " + phi.label(p) + " has no counterpart over " +
                            phi.label(q) + " under " + x.label(fib.object_map[p]) + " -> " +
                            x.label(fib.object_map[q]);
            rep.compatible = false;
            continue;
          }
          b[pc.cone] = it->second;
        }
        if (b.size() != pieces[q].size() && rep.compatible) {
          rep.compatible = false;
          rep.witness = "pieces over " + phi.label(p) + " and " + phi.label(q) + " differ in number";
        }
        rep.bijections.push_back(std::move(b));
      }
  return rep;
}

namespace {

// Faces of the pieces (p coordinates) whose relative interior lies in the
// relative interior of the face of p given by q < p, in the coordinates of q.
std::vector<ClosedCone> boundary_trace(const PoicComplex& phi, std::size_t q, std::size_t p,
                                       const std::vector<ClosedCone>& pieces) {
  const Poic& cp = phi.cone(p);
  const std::size_t face = phi.face_index(q, p);
  std::set<ClosedCone> out;
  for (const auto& c : pieces)
    for (const auto& g : all_faces(c)) {
      auto f = cp.face_of_point(g.interior_point());
      if (f && *f == face) out.insert(g.preimage(phi.face_map(q, p)));
    }
  return {out.begin(), out.end()};
}

bool boundary_consistent(const PoicComplex& phi, std::size_t p, const std::vector<ClosedCone>& pieces,
                         const std::vector<std::vector<ClosedCone>>& fixed) {
  for (std::size_t q : phi.below(p)) {
    std::vector<ClosedCone> want = fixed[q];
    std::sort(want.begin(), want.end());
    if (boundary_trace(phi, q, p, pieces) != want) return false;
  }
  return true;
}

// Relative-interior partition of the cone p obtained by coning its refined
// boundary (and its non-retained closure faces) from the point centre.
std::vector<ClosedCone> recone(const PoicComplex& phi, std::size_t p, const Vec& centre,
                               const std::vector<std::vector<ClosedCone>>& fixed) {
  const Poic& cp = phi.cone(p);
  if (!cp.is_pointed()) throw Error(ErrorCode::Unsupported, "cannot re-cone the non-pointed cone " + phi.label(p));
  std::vector<ClosedCone> boundary;
  for (std::size_t q : phi.below(p))
    for (const auto& c : fixed[q]) boundary.push_back(c.image(phi.face_map(q, p)));
  for (std::size_t f = 0; f < cp.closure_faces().size(); ++f)
    if (!cp.closure_faces()[f].retained) boundary.push_back(cp.face_cone(f));
  std::set<ClosedCone> out{ClosedCone::from_generators(cp.rank(), {centre})};
  for (const auto& b : boundary) {
    std::vector<Vec> gens = b.rays();
    gens.push_back(centre);
    out.insert(ClosedCone::from_generators(cp.rank(), gens));
  }
  return {out.begin(), out.end()};
}

}  // namespace

CompatibleRefinement compatible_refinement(const Fibration& fib, const Subdivision& s) {
  if (!same_complex(s.target, fib.source))
    throw Error(ErrorCode::AmbientMismatch, "subdivision is not of the fibration source");
  const PoicComplex& phi = fib.source;
  const PoicSpace& x = fib.target;
  if (!phi.pure_dim()) throw Error(ErrorCode::NotPure, "the fibration source is not pure");
  if (check_compatibility(fib, s).compatible) return {s, identity_subdivision(s.source)};

  std::vector<std::vector<ClosedCone>> fixed(phi.size());
  std::vector<std::size_t> order(x.classes().size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x.dim(x.classes()[a].front()) < x.dim(x.classes()[b].front());
  });

  for (std::size_t c : order) {
    const std::size_t rep = x.classes()[c].front();
    struct Chart {
      std::size_t p;
      IntMatrix to_rep;  // N^p -> N^rep
    };
    std::vector<Chart> charts;
    std::map<std::size_t, IntMatrix> first;
    for (std::size_t p = 0; p < phi.size(); ++p) {
      if (x.class_of(fib.object_map[p]) != c) continue;
      for (std::size_t m : x.isomorphisms(fib.object_map[p], rep)) {
        charts.push_back({p, x.morphism(m).matrix * fib.transform[p]});
        first.emplace(p, charts.back().to_rep);
      }
    }
    if (charts.empty()) continue;

    auto symmetrize = [&](const std::vector<std::vector<ClosedCone>>& per_p) {
      std::vector<ClosedCone> o;
      bool started = false;
      for (const auto& ch : charts) {
        std::vector<ClosedCone> t = transport(per_p[ch.p], ch.to_rep);
        o = started ? overlay_pieces(o, t) : t;
        started = true;
      }
      return o;
    };
    auto consistent = [&](const std::vector<ClosedCone>& o) {
      for (const auto& [p, a] : first)
        if (!boundary_consistent(phi, p, pull_back(o, a), fixed)) return false;
      return true;
    };

    std::vector<std::vector<ClosedCone>> old(phi.size());
    for (const auto& [p, a] : first) old[p] = closures_over(s, p);
    std::vector<ClosedCone> o = symmetrize(old);
    if (!consistent(o)) {
      const Poic& r = x.object(rep);
      if (!r.is_pointed()) throw Error(ErrorCode::Unsupported, "cannot re-cone the non-pointed object " + x.label(rep));
      Vec centre(r.rank(), Int(0));
      for (const Vec& v : r.closure().rays()) centre = add(centre, v);
      std::vector<std::vector<ClosedCone>> coned(phi.size());
      for (const auto& [p, a] : first) {
        auto back = solve_integer(a, centre);
        coned[p] = recone(phi, p, primitive(*back), fixed);
      }
      o = overlay_pieces(symmetrize(coned), o);
      if (!consistent(o))
        throw Error(ErrorCode::Unsupported, "symmetrized pieces of " + x.label(rep) + " do not fit their boundary");
    }
    for (const auto& [p, a] : first) fixed[p] = pull_back(o, a);
  }

  CompatibleRefinement out;
  try {
    out.composite = assemble_subdivision(phi, fixed);
  } catch (const Error& e) {
    throw Error(ErrorCode::Unsupported, std::string("symmetrized pieces do not assemble: ") + e.what());
  }
  SubdivisionReport r = validate_subdivision(out.composite);
  if (!r.valid()) throw Error(ErrorCode::Unsupported, "symmetrized pieces are not a subdivision: " + r.violations.front());
  out.relative = relative_subdivision(out.composite, s);
  CompatibilityReport c = check_compatibility(fib, out.composite);
  if (!c.compatible) throw Error(ErrorCode::Unsupported, "symmetrization failed: " + c.witness);
  return out;
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> stability_pairs(const Subdivision& s, const CompatibilityReport& c,
                                                                 std::optional<std::size_t> k) {
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& b : c.bijections)
    for (const auto& [from, to] : b)
      if (from != to && (!k || s.source.dim(from) == *k)) pairs.insert({std::min(from, to), std::max(from, to)});
  return {pairs.begin(), pairs.end()};
}

}  // namespace

EquivariantWeightLattice equivariant_basis(const Fibration& fib, std::size_t k, const Subdivision& s) {
  CompatibilityReport c = check_compatibility(fib, s);
  if (!c.compatible) throw Error(ErrorCode::NotCompatible, c.witness);
  if (!fib.linear) throw Error(ErrorCode::Unsupported, "equivariant weights need a linear structure");
  EquivariantWeightLattice out;
  out.k = k;
  out.equal_pairs = stability_pairs(s, c, k);
  out.lattice = minkowski_basis({s.source, pullback_linear(s, *fib.linear)}, k, out.equal_pairs);
  return out;
}

EquivarianceReport check_equivariant(const Fibration& fib, const Subdivision& s, const Weight& w) {
  CompatibilityReport c = check_compatibility(fib, s);
  if (!c.compatible) throw Error(ErrorCode::NotCompatible, c.witness);
  EquivarianceReport rep;
  if (fib.linear) {
    BalanceReport b = check_balanced({s.source, pullback_linear(s, *fib.linear)}, w);
    rep.balanced = b.balanced;
    if (!b.balanced) rep.witness = "not balanced at " + s.source.label(*b.failing_cone);
  }
  rep.invariant = true;
  for (const auto& [a, b] : stability_pairs(s, c, w.dim))
    if (w.at(a) != w.at(b)) {
      if (rep.invariant && rep.witness.empty())
        rep.witness = "weights of " + s.source.label(a) + " and " + s.source.label(b) + " differ";
      rep.invariant = false;
    }
  return rep;
}

std::optional<std::size_t> map_morphism(const PoicSpace& x, const PoicSpace& y, const SpaceMap& f, std::size_t m) {
  const SpaceMorphism& sm = x.morphism(m);
  IntMatrix want = f.transform[sm.target] * sm.matrix;
  for (std::size_t n : y.hom(f.object_map[sm.source], f.object_map[sm.target]))
    if (y.morphism(n).matrix * f.transform[sm.source] == want) return n;
  return std::nullopt;
}

std::string check_fibration_morphism(const Fibration& from, const Fibration& to, const FibrationMorphism& f) {
  std::string err = check_complex_morphism(from.source, to.source, f.complex_part);
  if (!err.empty()) return "complex part: " + err;
  const PoicSpace &x = from.target, &y = to.target;
  const SpaceMap& sp = f.space_part;
  if (sp.object_map.size() != x.size() || sp.transform.size() != x.size()) return "space part: wrong number of objects";
  for (std::size_t o = 0; o < x.size(); ++o) {
    if (sp.object_map[o] >= y.size()) return "space part: unknown object";
    std::string w;
    if (!maps_into(sp.transform[o], x.object(o), y.object(sp.object_map[o]), &w))
      return "space part: " + x.label(o) + " does not map into " + y.label(sp.object_map[o]) + ": " + w;
  }
  for (std::size_t m = 0; m < x.morphisms().size(); ++m)
    if (!map_morphism(x, y, sp, m))
      return "space part: morphism " + x.label(x.morphism(m).source) + " -> " + x.label(x.morphism(m).target) +
             " has no image";
  if (f.integral) {
    if (!from.linear || !to.linear) return "integral part given without linear structures";
    for (std::size_t p = 0; p < from.source.size(); ++p)
      if (!(*f.integral * from.linear->maps[p] == to.linear->maps[f.complex_part.cone_map[p]] * f.complex_part.matrices[p]))
        return "integral part does not intertwine the linear structures at " + from.source.label(p);
  }
  for (std::size_t p = 0; p < from.source.size(); ++p) {
    const std::size_t fp = f.complex_part.cone_map[p];
    const std::size_t yo = sp.object_map[from.object_map[p]];
    IntMatrix left = to.transform[fp] * f.complex_part.matrices[p];
    IntMatrix right = sp.transform[from.object_map[p]] * from.transform[p];
    bool ok = false;
    for (std::size_t g : y.isomorphisms(yo, to.object_map[fp]))
      if (y.morphism(g).matrix * right == left) ok = true;
    if (!ok) return "square does not commute at " + from.source.label(p);
  }
  return "";
}

PoicSpace product_space(const PoicSpace& x, const PoicSpace& y) {
  std::vector<Poic> objects;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) {
      objects.push_back(product(x.object(i), y.object(j)));
      labels.push_back("(" + x.label(i) + "," + y.label(j) + ")");
    }
  std::vector<SpaceMorphism> ms;
  for (const auto& a : x.morphisms())
    for (const auto& b : y.morphisms())
      ms.push_back({a.source * y.size() + b.source, a.target * y.size() + b.target, block_diag(a.matrix, b.matrix)});
  return PoicSpace::make(std::move(objects), ms, std::move(labels));
}

Fibration product_fibration(const Fibration& a, const Fibration& b) {
  PoicComplex src = product_complex(a.source, b.source);
  std::optional<LinearStructure> lin;
  if (a.linear && b.linear) lin = product_linear(a.source, *a.linear, b.source, *b.linear);
  std::vector<std::size_t> objects;
  std::vector<IntMatrix> transform;
  for (std::size_t i = 0; i < a.source.size(); ++i)
    for (std::size_t j = 0; j < b.source.size(); ++j) {
      objects.push_back(a.object_map[i] * b.target.size() + b.object_map[j]);
      transform.push_back(block_diag(a.transform[i], b.transform[j]));
    }
  return make_fibration(std::move(src), std::move(lin), product_space(a.target, b.target), std::move(objects),
                        std::move(transform));
}

FibrationPushforward fibration_pushforward(const Fibration& from, const Fibration& to, const FibrationMorphism& f,
                                           const Subdivision& s, const Weight& w,
                                           const std::optional<Subdivision>& t) {
  EquivarianceReport e = check_equivariant(from, s, w);
  if (!e.invariant || (from.linear && !e.balanced))
    throw Error(ErrorCode::NotCompatible, "weight is not equivariant: " + e.witness);
  ComplexMorphism p = compose(f.complex_part, s.morphism());
  ProperReport pr = is_weakly_proper(s.source, to.source, p);
  if (!pr.ok) throw Error(ErrorCode::InvalidFibration, "morphism is not weakly proper: " + pr.witness);
  FibrationPushforward out;
  out.fine = t ? *t : pfine_refinement(s.source, to.source, p);
  if (!same_complex(out.fine.target, to.source))
    throw Error(ErrorCode::AmbientMismatch, "fine subdivision is not of the target source");
  out.on_fine = pushforward(s.source, p, out.fine, w);
  CompatibleRefinement cr = compatible_refinement(to, out.fine);
  out.compatible = cr.composite;
  out.weight = pullback(cr.relative, out.on_fine).normalized();
  out.weight.dim = w.dim;
  EquivarianceReport e2 = check_equivariant(to, out.compatible, out.weight);
  out.equivariant = e2.invariant && (!to.linear || e2.balanced);
  return out;
}

}  // namespace tropocone
