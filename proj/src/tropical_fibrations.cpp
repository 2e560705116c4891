#include "tropocone/tropical_fibrations.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "tropocone/error.hpp"

namespace tropocone {

namespace {

struct CanonicalChart {
  std::size_t object = 0;
  IntMatrix matrix;  // #E(object) x #E(g): edge coordinates of g -> those of the object
};

CanonicalChart canonical_chart(const GraphCategory& cat, const DiscreteGraph& g) {
  auto idx = cat.find(g);
  if (!idx) throw Error(ErrorCode::MissingFace, "graph " + g.to_string() + " is not an object of the category");
  const DiscreteGraph& c = cat.objects[*idx];
  auto iso = find_isomorphism(g, c);
  std::vector<std::size_t> em = edge_map(g, c, *iso);
  IntMatrix p(c.edge_count(), g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) p(em[e], e) = 1;
  return {*idx, p};
}

IntMatrix zero(std::size_t r, std::size_t c) { return IntMatrix(r, c); }

DiscreteGraph relabel(const DiscreteGraph& g, const std::function<Label(const Label&)>& f) {
  std::map<Label, std::size_t> marking;
  for (const auto& [l, h] : g.marking()) marking[f(l)] = h;
  return DiscreteGraph::make(g.roots(), g.involutions(), marking);
}

// Index n of a loop label n or n*, if the label is one.
std::optional<std::size_t> loop_index(const Label& l) {
  if (l.empty() || l[0] != '^') return std::nullopt;
  return std::stoul(l.substr(1));
}

}  // namespace

SpanningTreeFibration::Chart SpanningTreeFibration::chart(const DiscreteGraph& tree) const {
  CanonicalChart c = canonical_chart(trees.category, tree);
  return {c.object, block_diag(c.matrix, IntMatrix::identity(genus))};
}

SpanningTreeFibration spanning_tree_fibration(std::size_t g, const std::vector<Label>& marks) {
  if (2 * g + marks.size() <= 2)
    throw Error(ErrorCode::UnstableParameters, "spanning tree fibration needs 2g + #A - 2 > 0");
  SpanningTreeFibration st;
  st.genus = g;
  st.marks = marks;
  st.tree_marks = marks;
  for (std::size_t i = 1; i <= g; ++i) {
    st.tree_marks.push_back(loop_leg_label(i, false));
    st.tree_marks.push_back(loop_leg_label(i, true));
  }
  st.trees = build_moduli(0, st.tree_marks);
  st.graphs = build_moduli(g, marks);
  const LinearComplex& lc = *st.trees.rational;
  PoicComplex deltas = face_complex(Poic::open_orthant(g));
  PoicComplex source = product_complex(lc.complex, deltas);
  LinearStructure lin = product_linear(lc.complex, lc.linear, deltas, LinearStructure{0, {zero(0, g)}});

  std::vector<std::size_t> objects;
  std::vector<IntMatrix> transform;
  for (const DiscreteGraph& t : st.trees.category.objects) {
    SpanningTreeGraph sg = join_loop_legs(t, g);
    IntMatrix joined(sg.graph.edge_count(), t.edge_count() + g);
    for (std::size_t e = 0; e < t.edge_count(); ++e) joined(sg.tree_edge[e], e) = 1;
    for (std::size_t i = 0; i < g; ++i) joined(sg.loop_edge[i], t.edge_count() + i) = 1;
    CanonicalChart c = canonical_chart(st.graphs.category, sg.graph);
    objects.push_back(c.object);
    transform.push_back(c.matrix * joined);
  }
  st.fibration = make_fibration(std::move(source), std::move(lin), st.graphs.space, objects, transform);
  return st;
}

FibrationMorphism forgetful_morphism(const SpanningTreeFibration& from, const SpanningTreeFibration& to,
                                     const Label& a) {
  const std::size_t g = from.genus;
  if (to.genus != g) throw Error(ErrorCode::DimensionMismatch, "forgetting a leg keeps the genus");
  FibrationMorphism f;
  for (const DiscreteGraph& t : from.trees.category.objects) {
    ForgetResult r = forget_leg(t, a);
    CanonicalChart c = canonical_chart(to.trees.category, r.graph);
    IntMatrix m(g, t.edge_count());
    if (r.kind == ForgetResult::Case::ExtraLeg)
      if (auto n = loop_index(*r.other_leg)) m(*n - 1, *r.removed_edge) = 1;
    IntMatrix top = hstack(c.matrix * r.eta, zero(c.matrix.rows(), g));
    f.complex_part.cone_map.push_back(c.object);
    f.complex_part.matrices.push_back(vstack(top, hstack(m, IntMatrix::identity(g))));
  }
  f.integral = forget_distance_map(*from.trees.distance, *to.trees.distance);
  for (const DiscreteGraph& G : from.graphs.category.objects) {
    ForgetResult r = forget_leg(G, a);
    CanonicalChart c = canonical_chart(to.graphs.category, r.graph);
    f.space_part.object_map.push_back(c.object);
    f.space_part.transform.push_back(c.matrix * r.eta);
  }
  return f;
}

Forgetful forgetful(std::size_t g, const std::vector<Label>& marks, const Label& a) {
  if (std::find(marks.begin(), marks.end(), a) == marks.end())
    throw Error(ErrorCode::MarkingNotBijective, "unknown mark " + a);
  std::vector<Label> rest;
  for (const auto& m : marks)
    if (m != a) rest.push_back(m);
  if (2 * g + rest.size() <= 2)
    throw Error(ErrorCode::UnstableAfterForgetting, "forgetting " + a + " leaves unstable parameters");
  Forgetful out{spanning_tree_fibration(g, marks), spanning_tree_fibration(g, rest), {}};
  out.morphism = forgetful_morphism(out.from, out.to, a);
  return out;
}

Clutching clutching(std::size_t g, const std::vector<Label>& a, std::size_t h, const std::vector<Label>& b) {
  std::vector<Label> shared;
  for (const auto& l : a)
    if (std::find(b.begin(), b.end(), l) != b.end()) shared.push_back(l);
  if (shared.size() != 1) throw Error(ErrorCode::BadLabelIntersection, "clutching needs exactly one shared label");
  const Label c = shared.front();
  std::vector<Label> marks;
  for (const auto& l : a)
    if (l != c) marks.push_back(l);
  for (const auto& l : b)
    if (l != c) marks.push_back(l);

  Clutching out;
  out.shared = c;
  out.left = spanning_tree_fibration(g, a);
  out.right = spanning_tree_fibration(h, b);
  out.target = spanning_tree_fibration(g + h, marks);
  out.product = product_fibration(out.left.fibration, out.right.fibration);
  auto shift = [&](const Label& l) -> Label {
    auto n = loop_index(l);
    if (!n) return l;
    return loop_leg_label(g + *n, l.back() == '*');
  };

  FibrationMorphism& f = out.morphism;
  for (const DiscreteGraph& t1 : out.left.trees.category.objects)
    for (const DiscreteGraph& t2 : out.right.trees.category.objects) {
      DiscreteGraph k = clutch(t1, relabel(t2, shift), c);
      SpanningTreeFibration::Chart ch = out.target.chart(k);
      // (E(t1), delta, E(t2), delta') -> (E(t1), E(t2), delta, delta')
      const std::size_t e1 = t1.edge_count(), e2 = t2.edge_count(), n = e1 + e2 + g + h;
      IntMatrix q(n, n);
      for (std::size_t i = 0; i < e1; ++i) q(i, i) = 1;
      for (std::size_t i = 0; i < g; ++i) q(e1 + e2 + i, e1 + i) = 1;
      for (std::size_t i = 0; i < e2; ++i) q(e1 + i, e1 + g + i) = 1;
      for (std::size_t i = 0; i < h; ++i) q(e1 + e2 + g + i, e1 + g + e2 + i) = 1;
      f.complex_part.cone_map.push_back(ch.cone);
      f.complex_part.matrices.push_back(ch.matrix * q);
    }
  for (const DiscreteGraph& g1 : out.left.graphs.category.objects)
    for (const DiscreteGraph& g2 : out.right.graphs.category.objects) {
      CanonicalChart ch = canonical_chart(out.target.graphs.category, clutch(g1, g2, c));
      f.space_part.object_map.push_back(ch.object);
      f.space_part.transform.push_back(ch.matrix);
    }

  // K_{A,B} on split vectors: a split of one factor becomes the split of the
  // glued tree separating its side away from c from everything else.
  const DistanceStructure &d1 = *out.left.trees.distance, &d2 = *out.right.trees.distance,
                          &d = *out.target.trees.distance;
  const std::size_t r1 = d1.rank(), r2 = d2.rank();
  std::vector<Vec> src, dst;
  auto add_splits = [&](const DistanceStructure& ds, bool right) {
    for (const auto& I : ds.splits()) {
      std::set<Label> in;
      for (std::size_t i : I) in.insert(ds.marks()[i]);
      const bool has_c = in.count(c) > 0;
      std::vector<std::size_t> away;
      for (const auto& m : ds.marks())
        if (m != c && (in.count(m) > 0) != has_c) away.push_back(d.mark_index(right ? shift(m) : m));
      Vec x = ds.coordinates(ds.split_vector(I));
      src.push_back(right ? concat(Vec(r1, Int(0)), x) : concat(x, Vec(r2, Int(0))));
      dst.push_back(d.coordinates(d.split_vector(away)));
    }
  };
  add_splits(d1, false);
  add_splits(d2, true);
  IntMatrix C = IntMatrix::from_cols(src, r1 + r2), D = IntMatrix::from_cols(dst, d.rank());
  IntMatrix L(d.rank(), r1 + r2);
  for (std::size_t i = 0; i < d.rank() && !out.integral_obstruction; ++i) {
    auto row = solve_integer(C.transpose(), D.row(i));
    if (!row)
      out.integral_obstruction = "the distance map K is not well defined on the distance lattices of the factors";
    else
      L.set_row(i, *row);
  }
  if (!out.integral_obstruction) f.integral = L;
  return out;
}

}  // namespace tropocone
