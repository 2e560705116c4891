#include "tropocone/moduli.hpp"

#include <algorithm>
#include <set>

#include "tropocone/error.hpp"

namespace tropocone {

DistanceStructure::DistanceStructure(std::vector<Label> marks) : marks_(std::move(marks)) {
  const std::size_t n = marks_.size();
  if (n < 3) throw Error(ErrorCode::TooFewMarks, "distance coordinates need at least three marks");
  if (std::set<Label>(marks_.begin(), marks_.end()).size() != n)
    throw Error(ErrorCode::TooFewMarks, "repeated mark label");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs_.push_back({i, j});
  m_a_ = IntMatrix(pairs_.size(), n);
  for (std::size_t k = 0; k < pairs_.size(); ++k) m_a_(k, pairs_[k].first) = m_a_(k, pairs_[k].second) = 1;
  coker_ = quotient(pairs_.size(), m_a_.transpose());

  // Splits containing mark 0 with 2 <= #I <= n - 2, by increasing size then lexicographically.
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    if (!(mask & 1ul)) continue;
    std::size_t c = __builtin_popcountl(mask);
    if (c < 2 || c + 2 > n) continue;
    std::vector<std::size_t> I;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) I.push_back(i);
    splits_.push_back(I);
  }
  std::sort(splits_.begin(), splits_.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<Vec> gens;
  for (const auto& I : splits_) gens.push_back(coker_.projection * split_vector(I));
  basis_ = hermite_normal_form(IntMatrix::from_rows(gens, coker_.free_rank));
}

Vec DistanceStructure::split_vector(const std::vector<std::size_t>& I) const {
  std::vector<bool> in(marks_.size(), false);
  for (std::size_t i : I) in[i] = true;
  Vec v(pairs_.size(), Int(0));
  for (std::size_t k = 0; k < pairs_.size(); ++k)
    if (in[pairs_[k].first] != in[pairs_[k].second]) v[k] = 1;
  return v;
}

Vec DistanceStructure::coordinates(const Vec& x) const {
  Vec y = coker_.projection * x;
  if (rank() == 0) {
    if (!is_zero(y)) throw Error(ErrorCode::NotSublattice, "vector is not in the distance lattice");
    return {};
  }
  auto c = solve_integer(basis_.transpose(), y);
  if (!c) throw Error(ErrorCode::NotSublattice, "vector is not in the distance lattice");
  return *c;
}

std::size_t DistanceStructure::mark_index(const Label& a) const {
  auto it = std::find(marks_.begin(), marks_.end(), a);
  if (it == marks_.end()) throw Error(ErrorCode::MarkingNotBijective, "unknown mark " + a);
  return it - marks_.begin();
}

std::vector<std::vector<std::size_t>> DistanceStructure::edge_splits(const DiscreteGraph& tree) const {
  if (tree.genus() != 0 || !tree.is_connected()) throw Error(ErrorCode::Unsupported, "distance splits need a tree");
  if (tree.marking().size() != marks_.size()) throw Error(ErrorCode::MarkingNotBijective, "tree marks differ");
  Incidence inc = incidence(tree);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t e = 0; e < inc.edges.size(); ++e) {
    // Vertices on the side of the first endpoint once e is removed.
    std::vector<bool> side(inc.vertices, false);
    std::vector<std::size_t> stack{inc.edges[e].first};
    side[inc.edges[e].first] = true;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t f = 0; f < inc.edges.size(); ++f) {
        if (f == e) continue;
        auto [a, b] = inc.edges[f];
        for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}})
          if (x == v && !side[y]) {
            side[y] = true;
            stack.push_back(y);
          }
      }
    }
    std::vector<bool> in(marks_.size(), false);
    for (const auto& [l, v] : inc.legs) in[mark_index(l)] = side[v];
    std::vector<std::size_t> I;
    for (std::size_t i = 0; i < marks_.size(); ++i)
      if (in[i] == in[0]) I.push_back(i);
    out.push_back(I);
  }
  return out;
}

IntMatrix DistanceStructure::tree_matrix(const DiscreteGraph& tree) const {
  auto splits = edge_splits(tree);
  IntMatrix m(rank(), splits.size());
  for (std::size_t e = 0; e < splits.size(); ++e) m.set_col(e, coordinates(split_vector(splits[e])));
  return m;
}

IntMatrix forget_distance_map(const DistanceStructure& from, const DistanceStructure& to) {
  // Pair k of `to` corresponds to the pair of `from` with the same labels.
  std::vector<std::size_t> pair_of(to.pairs().size());
  for (std::size_t k = 0; k < to.pairs().size(); ++k) {
    std::size_t i = from.mark_index(to.marks()[to.pairs()[k].first]);
    std::size_t j = from.mark_index(to.marks()[to.pairs()[k].second]);
    const std::pair<std::size_t, std::size_t> key{std::min(i, j), std::max(i, j)};
    pair_of[k] = std::find(from.pairs().begin(), from.pairs().end(), key) - from.pairs().begin();
  }
  // L C = D with C the coordinates of all v_I and D the coordinates of their restrictions.
  std::vector<Vec> cs, ds;
  for (const auto& I : from.splits()) {
    Vec v = from.split_vector(I);
    Vec r(to.pairs().size());
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = v[pair_of[k]];
    cs.push_back(from.coordinates(v));
    ds.push_back(to.coordinates(r));
  }
  IntMatrix C = IntMatrix::from_cols(cs, from.rank()), D = IntMatrix::from_cols(ds, to.rank());
  IntMatrix L(to.rank(), from.rank());
  for (std::size_t i = 0; i < to.rank(); ++i) {
    auto row = solve_integer(C.transpose(), D.row(i));
    if (!row) throw Error(ErrorCode::NotSublattice, "forgetting a mark is not integral on distance lattices");
    L.set_row(i, *row);
  }
  return L;
}

IntMatrix contraction_matrix(const GraphCategory& c, const GraphMorphism& m) {
  const std::size_t rows = c.objects[m.source].edge_count(), cols = c.objects[m.target].edge_count();
  IntMatrix out(rows, cols);
  for (std::size_t e = 0; e < cols; ++e) out(m.edge_map[e], e) = 1;
  return out;
}

Moduli build_moduli(std::size_t g, const std::vector<Label>& marks) {
  Moduli mod;
  mod.genus = g;
  mod.marks = marks;
  mod.category = enumerate_category(g, marks);
  const GraphCategory& cat = mod.category;
  std::vector<Poic> cones;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < cat.objects.size(); ++i) {
    cones.push_back(cone_of_metrics(cat.objects[i]));
    labels.push_back(cat.objects[i].to_string());
  }
  std::vector<SpaceMorphism> ms;
  std::vector<Relation> rels;
  for (const auto& m : cat.morphisms) {
    IntMatrix a = contraction_matrix(cat, m);
    ms.push_back({m.target, m.source, a});
    if (m.source != m.target) rels.push_back({m.target, m.source, a});
  }
  mod.space = PoicSpace::make(cones, ms, labels);
  if (g == 0) {
    mod.distance.emplace(marks);
    LinearComplex lc;
    lc.complex = PoicComplex::make(cones, rels, labels);
    lc.linear.target_rank = mod.distance->rank();
    for (const auto& G : cat.objects) lc.linear.maps.push_back(mod.distance->tree_matrix(G));
    check_linear_structure(lc.complex, lc.linear);
    mod.rational = std::move(lc);
  }
  return mod;
}

}  // namespace tropocone
