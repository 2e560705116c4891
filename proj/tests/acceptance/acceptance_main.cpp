// Acceptance checks: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "property/subdivision_properties.hpp"
#include "tropocone/complex.hpp"
#include "tropocone/fibration.hpp"
#include "tropocone/moduli.hpp"
#include "tropocone/subdivide.hpp"
#include "tropocone/tropical_fibrations.hpp"
#include "tropocone/weights.hpp"

using namespace tropocone;

namespace {

// Collects failed requirements of one criterion.
class Check {
 public:
  void require(bool cond, const std::string& what) {
    if (!cond) failures_.push_back(what);
  }
  void note(const std::string& s) { notes_ << (notes_.tellp() > 0 ? "; " : "") << s; }
  bool ok() const { return failures_.empty(); }
  std::string summary() const { return ok() ? notes_.str() : failures_.front(); }

 private:
  std::vector<std::string> failures_;
  std::ostringstream notes_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vec vec(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Vec> r;
  for (auto& row : rows) r.push_back(vec(row));
  return IntMatrix::from_rows(r, r.front().size());
}

std::vector<Label> marks(std::size_t n) {
  std::vector<Label> a;
  for (std::size_t i = 1; i <= n; ++i) a.push_back(std::to_string(i));
  return a;
}

// Brute force: trivalent trees on leaves 0..n-1 built by inserting each new
// leaf into every edge of every tree on fewer leaves, compared by split sets.
std::size_t brute_force_trivalent_trees(std::size_t n) {
  using Edges = std::vector<std::pair<std::size_t, std::size_t>>;
  const std::size_t centre = 1000;
  std::vector<Edges> trees{{{0, centre}, {1, centre}, {2, centre}}};
  std::size_t next = centre + 1;
  for (std::size_t leaf = 3; leaf < n; ++leaf) {
    std::vector<Edges> grown;
    for (const auto& t : trees)
      for (std::size_t e = 0; e < t.size(); ++e) {
        Edges g = t;
        auto [u, v] = g[e];
        const std::size_t w = next++;
        g[e] = {u, w};
        g.push_back({w, v});
        g.push_back({w, leaf});
        grown.push_back(g);
      }
    trees = grown;
  }
  std::set<std::set<unsigned>> distinct;
  for (const auto& t : trees) {
    std::set<unsigned> splits;
    for (std::size_t e = 0; e < t.size(); ++e) {
      // Leaves reachable from t[e].second without crossing e.
      unsigned side = 0;
      std::vector<std::size_t> stack{t[e].second};
      std::set<std::size_t> seen{t[e].first, t[e].second};
      while (!stack.empty()) {
        std::size_t x = stack.back();
        stack.pop_back();
        if (x < n) side |= 1u << x;
        for (std::size_t f = 0; f < t.size(); ++f) {
          if (f == e) continue;
          std::size_t y = t[f].first == x ? t[f].second : t[f].second == x ? t[f].first : std::size_t(-1);
          if (y != std::size_t(-1) && seen.insert(y).second) stack.push_back(y);
        }
      }
      if (side & 1u) side = ((1u << n) - 1) & ~side;
      splits.insert(side);
    }
    distinct.insert(splits);
  }
  return distinct.size();
}

std::size_t double_factorial(std::size_t k) { return k <= 1 ? 1 : k * double_factorial(k - 2); }

Check criterion_category_counts() {
  Check c;
  auto timed = [&](std::size_t g, std::vector<Label> a) {
    auto t0 = std::chrono::steady_clock::now();
    GraphCategory cat = enumerate_category(g, a);
    const double s = seconds_since(t0);
    c.require(s < 10.0, "enumeration took " + std::to_string(s) + " s");
    return cat;
  };
  GraphCategory c04 = timed(0, marks(4)), c05 = timed(0, marks(5)), c12 = timed(1, {"1", "2"});
  GraphCategory c21 = timed(2, {"1"}), c20 = timed(2, {});
  c.require(c04.objects.size() == 4, "(0,4): " + std::to_string(c04.objects.size()) + " classes");
  c.require(c05.maximal().size() == 15, "(0,5): " + std::to_string(c05.maximal().size()) + " trivalent classes");
  c.require(c12.objects.size() == 3, "(1,{1,2}): " + std::to_string(c12.objects.size()) + " classes");
  c.require(c21.objects.size() == 7, "(2,{1}): " + std::to_string(c21.objects.size()) + " classes");
  // The three classes of G_{2,0}: theta, dumbbell (both trivalent) and the rose with two loops.
  c.require(c20.objects.size() == 3, "(2,{}): " + std::to_string(c20.objects.size()) + " classes");
  c.require(c20.maximal().size() == 2, "(2,{}): " + std::to_string(c20.maximal().size()) + " trivalent classes");
  for (std::size_t n = 4; n <= 7; ++n) {
    const std::size_t formula = double_factorial(2 * n - 5), brute = brute_force_trivalent_trees(n);
    const std::size_t engine = timed(0, marks(n)).maximal().size();
    c.require(brute == formula && engine == formula,
              "n=" + std::to_string(n) + ": engine " + std::to_string(engine) + ", brute force " +
                  std::to_string(brute) + ", (2n-5)!! " + std::to_string(formula));
  }
  c.note("4, 15, 3, 7, 3 (2 trivalent) classes; trivalent trees n=4..7 = (2n-5)!! by brute force");
  return c;
}

Check criterion_rational_irreducible() {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  for (std::size_t n : {4, 5}) {
    Moduli m = build_moduli(0, marks(n));
    WeightLattice lat = minkowski_basis(*m.rational, n - 3);
    c.require(lat.rank() == 1, "#A=" + std::to_string(n) + ": rank " + std::to_string(lat.rank()));
    if (lat.rank() != 1) continue;
    const Int first = lat.basis[0].at(lat.cones.front());
    c.require(first == 1 || first == -1, "#A=" + std::to_string(n) + ": generator not primitive");
    for (std::size_t p : lat.cones) c.require(lat.basis[0].at(p) == first, "generator not constant");
    c.note("#A=" + std::to_string(n) + ": rank 1 on " + std::to_string(lat.cones.size()) + " cones");
  }
  const double s = seconds_since(t0);
  c.require(s < 30.0, "took " + std::to_string(s) + " s");
  return c;
}

Check criterion_origin_balancing() {
  Check c;
  Moduli m = build_moduli(0, marks(4));
  const DistanceStructure& d = *m.distance;
  const LinearComplex& lc = *m.rational;
  // Independent oracle: pairs 12,13,14,23,24,34; v_I marks the pairs separated by I.
  const std::vector<std::pair<int, int>> pairs{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
  auto v = [&](std::set<int> I) {
    Vec x;
    for (auto [i, j] : pairs) x.emplace_back(I.count(i) != I.count(j) ? 1 : 0);
    return x;
  };
  const Vec v12 = v({1, 2}), v13 = v({1, 3}), v14 = v({1, 4});
  c.require(v12 == vec({0, 1, 1, 1, 1, 0}) && v13 == vec({1, 0, 1, 1, 0, 1}) && v14 == vec({1, 1, 0, 0, 1, 1}),
            "oracle split vectors");
  const Vec sum = add(add(v12, v13), v14);
  // M_A: a -> (a_i + a_j); certificate lambda = (1,1,1,1).
  IntMatrix ma(6, 4);
  for (std::size_t r = 0; r < 6; ++r) {
    ma(r, pairs[r].first - 1) = 1;
    ma(r, pairs[r].second - 1) = 1;
  }
  const Vec lambda = vec({1, 1, 1, 1});
  c.require(ma * lambda == sum, "M_A (1,1,1,1) != v12 + v13 + v14");
  c.require(ma == d.m_a(), "library M_A differs from the oracle");
  c.require(d.split_vector({0, 1}) == v12 && d.split_vector({0, 2}) == v13 && d.split_vector({0, 3}) == v14,
            "library split vectors differ from the oracle");
  auto solved = solve_integer(d.m_a(), sum);
  c.require(solved.has_value() && d.m_a() * *solved == sum, "no integer certificate found by the library");

  // The same statement as balancing of the constant weight at the origin.
  std::size_t origin = lc.complex.cones_of_dim(0).at(0);
  Weight ones = constant_weight(lc.complex, 1, Int(1));
  BalanceResult b = is_balanced_at(lc, ones, origin);
  c.require(b.balanced && is_zero(b.sum), "constant weight not balanced at the origin");
  Vec oracle_sum(d.rank(), Int(0));
  for (std::size_t t : star1(lc.complex, origin)) {
    NormalVector n = normal_vector(lc, origin, t);
    oracle_sum = add(oracle_sum, n.image);
  }
  c.require(is_zero(oracle_sum), "normal vectors do not sum to zero in N_dist");
  c.require(d.coordinates(sum) == oracle_sum, "class of the split-vector sum differs");
  c.note("v12+v13+v14 = (2,2,2,2,2,2) = M_A (1,1,1,1)");
  return c;
}

Check criterion_spanning_tree() {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  struct Case {
    std::size_t g;
    std::vector<Label> a;
    std::size_t pure;
  };
  for (const Case& k : {Case{1, {"1"}, 1}, Case{1, {"1", "2"}, 2}, Case{2, {}, 3}}) {
    const std::string name = "st_{" + std::to_string(k.g) + "," + std::to_string(k.a.size()) + " marks}";
    SpanningTreeFibration st = spanning_tree_fibration(k.g, k.a);
    FibrationReport r = validate_fibration(st.fibration);
    c.require(r.valid(), name + " invalid: " + (r.violations.empty() ? "" : r.violations.front()));
    auto pure = st.fibration.source.pure_dim();
    c.require(pure == k.pure, name + " not pure of dimension " + std::to_string(k.pure));
    c.require(3 * k.g + k.a.size() - 3 == k.pure, name + " dimension formula");
    if (!pure) continue;
    EquivariantWeightLattice e = equivariant_basis(st.fibration, *pure, identity_subdivision(st.fibration.source));
    c.require(e.rank() == 1, name + " equivariant rank " + std::to_string(e.rank()));
  }
  const double s = seconds_since(t0);
  c.require(s < 60.0, "took " + std::to_string(s) + " s");
  c.note("valid, pure of dimension 1, 2, 3, equivariant rank 1 each");
  return c;
}

Check criterion_working_example() {
  Check c;
  Poic open = Poic::open_orthant(3);
  IntMatrix r = mat({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
  PoicSpace x = PoicSpace::make({open}, {{0, 0, r}, {0, 0, r * r}}, {"X"});
  PoicComplex phi = PoicComplex::make({open, open}, {}, {"A", "B"});
  Fibration f = make_fibration(phi, LinearStructure{3, {IntMatrix::identity(3), IntMatrix::identity(3)}}, x, {0, 0},
                               {IntMatrix::identity(3), IntMatrix::identity(3)});
  c.require(validate_fibration(f).valid(), "not a fibration");

  // Star subdivision at the diagonal of each copy.
  auto gen = [](std::vector<Vec> rays) { return ClosedCone::from_generators(3, rays); };
  const Vec d = vec({1, 1, 1});
  const std::vector<Vec> e{vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})};
  std::vector<ClosedCone> star{gen({d})};
  for (std::size_t i = 0; i < 3; ++i) {
    star.push_back(gen({e[i], d}));
    star.push_back(gen({e[i], e[(i + 1) % 3], d}));
  }
  Subdivision s = assemble_subdivision(f.source, {star, star});
  c.require(validate_subdivision(s).valid(), "diagonal star is not a subdivision");
  c.require(s.source.cones_of_dim(2).size() == 6, "expected six 2-dimensional cones");
  CompatibilityReport compat = check_compatibility(f, s);
  c.require(compat.compatible, "not compatible: " + compat.witness);

  EquivarianceReport ones = check_equivariant(f, s, constant_weight(s.source, 2, Int(1)));
  c.require(ones.equivariant(), "constant 1 rejected: " + ones.witness);
  Weight one_copy{2, {}};
  for (std::size_t p : s.source.cones_of_dim(2))
    if (s.cone_map[p] == 0) one_copy.values[p] = 1;
  EquivarianceReport asym = check_equivariant(f, s, one_copy);
  c.require(asym.balanced, "copy-asymmetric weight not balanced");
  c.require(!asym.equivariant(), "copy-asymmetric weight accepted as equivariant");
  c.note("compatible (" + std::to_string(compat.triples.size()) +
         " triples); constant 1 equivariant; one-copy weight balanced, not invariant");
  return c;
}

Check criterion_subdivision_properties() {
  Check c;
  using namespace tropocone::properties;
  struct Prop {
    const char* name;
    PropertyResult (*run)(std::uint64_t, int);
    std::uint64_t seed;
  };
  const Prop props[] = {{"validate_subdivision", engine_outputs_are_valid, 7},
                        {"pullback", pullback_preserves_balancing, 11},
                        {"pushforward", pushforward_preserves_balancing, 13},
                        {"cross product", cross_products_are_balanced, 17},
                        {"ord chain counts", ord_counts_equal_chain_counts, 19}};
  for (const Prop& p : props) {
    PropertyResult r = p.run(p.seed, 200);
    c.require(r.ok(), std::string(p.name) + ": " + r.failure);
    c.require(r.cases >= 200, std::string(p.name) + ": only " + std::to_string(r.cases) + " cases");
  }
  c.note("5 properties x 200 random cases");
  return c;
}

Check criterion_forgetful() {
  Check c;
  Forgetful ft = forgetful(1, {"a", "b", "c"}, "a");
  // x joins the vertex of b to that of c, 1; y joins it to that of a, 1*; l is the loop length.
  DiscreteGraph tree = DiscreteGraph::from_incidence(
      3, {{0, 1}, {0, 2}}, {{"b", 0}, {"c", 1}, {loop_leg_label(1, false), 1}, {"a", 2}, {loop_leg_label(1, true), 2}});
  DiscreteGraph forgotten = DiscreteGraph::from_incidence(
      2, {{0, 1}}, {{"b", 0}, {loop_leg_label(1, true), 0}, {"c", 1}, {loop_leg_label(1, false), 1}});
  auto from = ft.from.chart(tree);
  auto to = ft.to.chart(forgotten);
  c.require(ft.morphism.complex_part.cone_map[from.cone] == to.cone, "tree goes to the wrong cone");
  IntMatrix map = to.matrix.transpose() * ft.morphism.complex_part.matrices[from.cone] * from.matrix;
  c.require(map == mat({{1, 0, 0}, {0, 1, 1}}), "cone map is " + map.to_string());
  c.require(check_fibration_morphism(ft.from.fibration, ft.to.fibration, ft.morphism).empty(), "not a morphism");

  // Cut the cone of the tree by x = l; the cut is not weakly proper.
  const PoicComplex& src = ft.from.fibration.source;
  const PoicComplex& dst = ft.to.fibration.source;
  Subcomplex sub = closure_subcomplex(src, from.cone);
  ComplexMorphism restricted;
  for (std::size_t id : sub.ids) {
    restricted.cone_map.push_back(ft.morphism.complex_part.cone_map[id]);
    restricted.matrices.push_back(ft.morphism.complex_part.matrices[id]);
  }
  c.require(is_weakly_proper(sub.complex, dst, restricted).ok, "uncut cone already fails weak properness");
  const std::vector<Vec> orthant{vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})};
  auto with = [&](const Vec& extra) {
    std::vector<Vec> ineq = orthant;
    ineq.push_back(extra);
    return ClosedCone::from_inequalities(3, ineq).image(from.matrix);
  };
  const ClosedCone wall = ClosedCone::from_inequalities(3, orthant, {vec({1, 0, -1})}).image(from.matrix);
  std::vector<ClosedCone> pieces{with(vec({1, 0, -1})), with(vec({-1, 0, 1})), wall};
  const std::size_t top = std::find(sub.ids.begin(), sub.ids.end(), from.cone) - sub.ids.begin();
  std::vector<std::vector<ClosedCone>> induced(sub.complex.size());
  for (std::size_t q = 0; q < sub.complex.size(); ++q) {
    if (!sub.complex.leq(q, top)) continue;
    std::set<ClosedCone> found;
    const std::size_t face = q == top ? sub.complex.cone(top).top_face() : sub.complex.face_index(q, top);
    for (const auto& p : pieces)
      for (const auto& g : all_faces(p)) {
        auto f = sub.complex.cone(top).face_of_point(g.interior_point());
        if (f && *f == face) found.insert(g.preimage(sub.complex.face_map(q, top)));
      }
    induced[q] = {found.begin(), found.end()};
  }
  Subdivision cut = assemble_subdivision(sub.complex, induced);
  c.require(validate_subdivision(cut).valid(), "cut by x = l is not a subdivision");
  ProperReport proper = is_weakly_proper(cut.source, dst, compose(restricted, cut.morphism()));
  c.require(!proper.ok && !proper.witness.empty(), "cut by x = l reported weakly proper");

  // ft_a after ft_b equals ft_b after ft_a.
  std::vector<Label> five{"a", "b", "1", "2", "3"};
  SpanningTreeFibration base = spanning_tree_fibration(0, {"1", "2", "3"});
  Forgetful fa = forgetful(0, five, "a"), fb = forgetful(0, five, "b");
  ComplexMorphism ab = compose(forgetful_morphism(fa.to, base, "b").complex_part, fa.morphism.complex_part);
  ComplexMorphism ba = compose(forgetful_morphism(fb.to, base, "a").complex_part, fb.morphism.complex_part);
  c.require(ab.cone_map == ba.cone_map, "cone maps of the composites differ");
  bool same = ab.matrices.size() == ba.matrices.size();
  for (std::size_t p = 0; same && p < ab.matrices.size(); ++p) same = ab.matrices[p] == ba.matrices[p];
  c.require(same, "matrices of the composites differ");
  c.note("(x,y,l) -> (x,y+l); witness: " + proper.witness + "; ft_a ft_b = ft_b ft_a on " +
         std::to_string(ab.cone_map.size()) + " cones");
  return c;
}

Check criterion_clutching() {
  Check c;
  Clutching cl = clutching(0, {"1", "2", "c"}, 0, {"c", "3", "4"});
  c.require(check_fibration_morphism(cl.product, cl.target.fibration, cl.morphism).empty(), "not a morphism");
  const PoicComplex& src = cl.product.source;
  const PoicComplex& dst = cl.target.fibration.source;
  ProperReport proper = is_proper_bounded(src, dst, cl.morphism.complex_part);
  c.require(proper.ok, "properness fails: " + proper.witness);
  // Lattice index of the image of the point in the origin: |Z^0 / 0| = 1.
  auto index = lattice_index(Lattice::standard(0), Lattice{0, IntMatrix(0, 0)});
  c.require(index && *index == 1, "lattice index of the origin is not 1");
  FibrationPushforward out =
      fibration_pushforward(cl.product, cl.target.fibration, cl.morphism, identity_subdivision(src),
                            constant_weight(src, 0, Int(1)));
  c.require(out.equivariant, "pushforward not equivariant");
  Weight w = out.weight.normalized();
  c.require(w.values.size() == 1, "pushforward supported on " + std::to_string(w.values.size()) + " cones");
  if (w.values.size() == 1) {
    const auto& [cone, value] = *w.values.begin();
    c.require(out.compatible.source.dim(cone) == 0, "pushforward not on the origin");
    c.require(value == 1, "weight " + value.get_str() + " on the origin");
  }
  c.note("weight 1 on the origin of M_{0,4}, index 1; weakly proper after identity, barycentric, stellar subdivisions");
  return c;
}

Check criterion_classical_comparison() {
  Check c;
  auto q = [](long a, long b) { return std::vector<Rat>{Rat(a), Rat(b)}; };
  PolyhedralComplex line;
  line.ambient_dim = 2;
  line.cells = {{{q(0, 0)}, {}}, {{q(0, 0)}, {vec({-1, 0})}}, {{q(0, 0)}, {vec({0, -1})}}, {{q(0, 0)}, {vec({1, 1})}}};
  LinearComplex lc = conify(line);
  Weight w = constant_weight(lc.complex, 2, Int(1));
  c.require(w.values.size() == 3, "expected three 2-dimensional cones");
  BalanceReport b = check_balanced(lc, w);
  c.require(b.balanced, "conified weight not balanced");
  PolyhedralComplex sliced = slice_at_height_one(lc);
  c.require(sliced.cells.size() == line.cells.size(), "slicing returned a different number of cells");
  for (std::size_t i = 0; i < std::min(sliced.cells.size(), line.cells.size()); ++i) {
    Polyhedron expect = canonical_polyhedron(2, line.cells[i]);
    c.require(sliced.cells[i].vertices == expect.vertices && sliced.cells[i].rays == expect.rays,
              "cell " + std::to_string(i) + " not recovered");
  }
  c.note("balanced 2-weight on " + std::to_string(lc.complex.size()) + " cones; slicing at z=1 recovers the 4 cells");
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"category counts", criterion_category_counts},
      {"irreducibility of rational moduli", criterion_rational_irreducible},
      {"balancing at the origin of M_{0,4}", criterion_origin_balancing},
      {"spanning-tree fibrations", criterion_spanning_tree},
      {"working-example equivariance", criterion_working_example},
      {"subdivision calculus properties", criterion_subdivision_properties},
      {"forgetful morphism", criterion_forgetful},
      {"clutching", criterion_clutching},
      {"classical comparison", criterion_classical_comparison},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& [name, run] = criteria[i];
    auto t0 = std::chrono::steady_clock::now();
    std::string verdict, detail;
    try {
      Check c = run();
      verdict = c.ok() ? "PASS" : "FAIL";
      detail = c.summary();
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = std::string("exception: ") + e.what();
    }
    if (verdict == "FAIL") ++failed;
    std::ostringstream time;
    time.precision(2);
    time << std::fixed << seconds_since(t0);
    std::cout << verdict << " criterion " << i + 1 << " (" << name << "): " << detail << " [" << time.str() << " s]"
              << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
