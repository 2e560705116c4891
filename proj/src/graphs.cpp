#include "tropocone/graphs.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "tropocone/error.hpp"

namespace tropocone {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

// Union-find over vertex indices.
struct Components {
  std::vector<std::size_t> parent;
  explicit Components(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

// Edge multiplicities between vertices (loops on the diagonal) and sorted leg labels per vertex.
struct VertexData {
  std::vector<std::vector<std::size_t>> mult;
  std::vector<std::vector<Label>> legs;
  std::vector<std::size_t> valency;
};

VertexData vertex_data(const DiscreteGraph& g) {
  const std::size_t n = g.vertex_count();
  VertexData d{std::vector<std::vector<std::size_t>>(n, std::vector<std::size_t>(n, 0)),
               std::vector<std::vector<Label>>(n), std::vector<std::size_t>(n)};
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.endpoints(e);
    d.mult[u][v]++;
    if (u != v) d.mult[v][u]++;
  }
  for (const auto& [a, f] : g.marking()) d.legs[g.vertex_of(f)].push_back(a);
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(d.legs[v].begin(), d.legs[v].end());
    d.valency[v] = g.valency(v);
  }
  return d;
}

// Colour refinement to an equitable ordered partition.  Colours are ranks of
// isomorphism-invariant signatures, so the result is canonical.
std::vector<std::size_t> refine(const VertexData& d, std::vector<std::size_t> colour) {
  const std::size_t n = colour.size();
  for (;;) {
    using Sig = std::pair<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>>;
    std::vector<Sig> sig(n);
    for (std::size_t v = 0; v < n; ++v) {
      sig[v].first = colour[v];
      for (std::size_t w = 0; w < n; ++w)
        if (d.mult[v][w] > 0) sig[v].second.push_back({w == v ? npos : colour[w], d.mult[v][w]});
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    std::vector<Sig> sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> next(n);
    for (std::size_t v = 0; v < n; ++v)
      next[v] = std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin();
    std::size_t before = std::set<std::size_t>(colour.begin(), colour.end()).size();
    colour = std::move(next);
    if (sorted.size() == before) return colour;
  }
}

std::vector<std::size_t> initial_colours(const VertexData& d) {
  const std::size_t n = d.valency.size();
  using Sig = std::tuple<std::size_t, std::size_t, std::vector<Label>>;
  std::vector<Sig> sig(n);
  for (std::size_t v = 0; v < n; ++v) sig[v] = {d.valency[v], d.mult[v][v], d.legs[v]};
  std::vector<Sig> sorted = sig;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::size_t> c(n);
  for (std::size_t v = 0; v < n; ++v) c[v] = std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin();
  return c;
}

// Incidence data of g with vertices renumbered by pos, sorted canonically.
Incidence relabelled(const DiscreteGraph& g, const std::vector<std::size_t>& pos) {
  Incidence inc;
  inc.vertices = g.vertex_count();
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.endpoints(e);
    inc.edges.push_back(std::minmax(pos[u], pos[v]));
  }
  std::sort(inc.edges.begin(), inc.edges.end());
  for (const auto& [a, f] : g.marking()) inc.legs.push_back({a, pos[g.vertex_of(f)]});
  return inc;  // legs already sorted by label (map order)
}

std::string encode(const Incidence& inc) {
  std::ostringstream os;
  os << inc.vertices << "|";
  for (const auto& [u, v] : inc.edges) os << u << "-" << v << ",";
  os << "|";
  for (const auto& [a, v] : inc.legs) os << a.size() << ":" << a << "@" << v << ",";
  return os.str();
}

struct CanonicalSearch {
  const DiscreteGraph& g;
  VertexData d;
  std::optional<std::string> best;
  std::optional<Incidence> best_inc;

  void run(const std::vector<std::size_t>& colour) {
    std::vector<std::size_t> c = refine(d, colour);
    const std::size_t n = c.size();
    // First non-singleton cell (smallest colour).
    std::vector<std::size_t> count(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) count[c[v]]++;
    std::size_t cell = npos;
    for (std::size_t k = 0; k < n && cell == npos; ++k)
      if (count[k] > 1) cell = k;
    if (cell == npos) {
      Incidence inc = relabelled(g, c);
      std::string key = encode(inc);
      if (!best || key < *best) {
        best = key;
        best_inc = inc;
      }
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (c[v] != cell) continue;
      std::vector<std::size_t> ind(n);
      for (std::size_t w = 0; w < n; ++w) ind[w] = 2 * c[w] + 1;
      ind[v] = 2 * c[v];
      run(ind);
    }
  }
};

void cartesian(const std::vector<std::vector<std::vector<std::pair<std::size_t, std::size_t>>>>& choices,
               std::size_t i, FlagMap& cur, std::vector<FlagMap>& out) {
  if (i == choices.size()) {
    out.push_back(cur);
    return;
  }
  for (const auto& option : choices[i]) {
    for (const auto& [from, to] : option) cur[from] = to;
    cartesian(choices, i + 1, cur, out);
  }
}

}  // namespace

DiscreteGraph DiscreteGraph::make(std::vector<std::size_t> root, std::vector<std::size_t> involution,
                                  std::map<Label, std::size_t> marking) {
  const std::size_t n = root.size();
  if (involution.size() != n) throw Error(ErrorCode::BadInvolution, "root and involution have different sizes");
  for (std::size_t f = 0; f < n; ++f) {
    if (involution[f] >= n || involution[involution[f]] != f)
      throw Error(ErrorCode::BadInvolution, "involution is not an involution at flag " + std::to_string(f));
    if (root[f] >= n) throw Error(ErrorCode::BadRootCompatibility, "root of flag " + std::to_string(f) + " out of range");
  }
  for (std::size_t f = 0; f < n; ++f) {
    std::size_t v = root[f];
    if (root[v] != v)
      throw Error(ErrorCode::BadRootCompatibility, "root of flag " + std::to_string(f) + " is not a vertex");
    if (involution[v] != v)
      throw Error(ErrorCode::BadRootCompatibility, "involution moves the vertex " + std::to_string(v));
  }
  DiscreteGraph g;
  g.root_ = std::move(root);
  g.inv_ = std::move(involution);
  g.vertex_index_.assign(n, npos);
  g.edge_index_.assign(n, npos);
  for (std::size_t f = 0; f < n; ++f) {
    if (g.root_[f] == f) {
      g.vertex_index_[f] = g.vertices_.size();
      g.vertices_.push_back(f);
    } else if (g.inv_[f] == f) {
      g.legs_.push_back(f);
    } else if (f < g.inv_[f]) {
      g.edge_index_[f] = g.edge_index_[g.inv_[f]] = g.edges_.size();
      g.edges_.push_back({f, g.inv_[f]});
    }
  }
  std::set<std::size_t> hit;
  for (const auto& [a, f] : marking) {
    if (f >= n || g.root_[f] == f || g.inv_[f] != f)
      throw Error(ErrorCode::MarkingNotBijective, "label " + a + " does not mark a leg");
    if (!hit.insert(f).second) throw Error(ErrorCode::MarkingNotBijective, "two labels mark the same leg");
  }
  if (hit.size() != g.legs_.size()) throw Error(ErrorCode::MarkingNotBijective, "some leg carries no label");
  g.marking_ = std::move(marking);
  return g;
}

DiscreteGraph DiscreteGraph::from_incidence(std::size_t vertices,
                                            const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                            const std::vector<std::pair<Label, std::size_t>>& legs) {
  const std::size_t n = vertices + 2 * edges.size() + legs.size();
  std::vector<std::size_t> root(n), inv(n);
  for (std::size_t v = 0; v < vertices; ++v) root[v] = inv[v] = v;
  std::size_t f = vertices;
  for (const auto& [u, v] : edges) {
    if (u >= vertices || v >= vertices) throw Error(ErrorCode::BadRootCompatibility, "edge endpoint out of range");
    root[f] = u, root[f + 1] = v;
    inv[f] = f + 1, inv[f + 1] = f;
    f += 2;
  }
  std::map<Label, std::size_t> marking;
  for (const auto& [a, v] : legs) {
    if (v >= vertices) throw Error(ErrorCode::BadRootCompatibility, "leg vertex out of range");
    root[f] = v, inv[f] = f;
    if (!marking.emplace(a, f).second) throw Error(ErrorCode::MarkingNotBijective, "label " + a + " used twice");
    ++f;
  }
  return make(std::move(root), std::move(inv), std::move(marking));
}

std::optional<std::size_t> DiscreteGraph::edge_of(std::size_t f) const {
  if (edge_index_[f] == npos) return std::nullopt;
  return edge_index_[f];
}

std::size_t DiscreteGraph::valency(std::size_t v) const {
  std::size_t vf = vertices_[v], c = 0;
  for (std::size_t f = 0; f < root_.size(); ++f)
    if (root_[f] == vf) ++c;
  return c - 1;
}

bool DiscreteGraph::is_connected() const {
  if (vertices_.empty()) return true;
  Components comp(vertices_.size());
  std::size_t parts = vertices_.size();
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    auto [u, v] = endpoints(e);
    if (comp.unite(u, v)) --parts;
  }
  return parts == 1;
}

std::optional<Label> DiscreteGraph::label_of(std::size_t f) const {
  for (const auto& [a, g] : marking_)
    if (g == f) return a;
  return std::nullopt;
}

std::string DiscreteGraph::to_string() const {
  std::ostringstream os;
  Incidence inc = incidence(*this);
  os << "graph(" << inc.vertices << " vertices; edges";
  for (const auto& [u, v] : inc.edges) os << " " << u << "-" << v;
  os << "; legs";
  for (const auto& [a, v] : inc.legs) os << " " << a << "@" << v;
  os << ")";
  return os.str();
}

Incidence incidence(const DiscreteGraph& g) {
  Incidence inc;
  inc.vertices = g.vertex_count();
  for (std::size_t e = 0; e < g.edge_count(); ++e) inc.edges.push_back(g.endpoints(e));
  for (std::size_t f : g.legs()) inc.legs.push_back({*g.label_of(f), g.vertex_of(f)});
  return inc;
}

bool is_forest(const DiscreteGraph& g, const std::vector<std::size_t>& edges) {
  Components comp(g.vertex_count());
  for (std::size_t e : edges) {
    auto [u, v] = g.endpoints(e);
    if (!comp.unite(u, v)) return false;
  }
  return true;
}

std::vector<std::size_t> surviving_edges(const DiscreteGraph& g, const std::vector<std::size_t>& contracted) {
  std::set<std::size_t> k(contracted.begin(), contracted.end());
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (!k.count(e)) out.push_back(e);
  return out;
}

DiscreteGraph contract_edges(const DiscreteGraph& g, const std::vector<std::size_t>& edges) {
  Components comp(g.vertex_count());
  for (std::size_t e : edges) {
    if (e >= g.edge_count()) throw Error(ErrorCode::LoopContraction, "no edge " + std::to_string(e));
    auto [u, v] = g.endpoints(e);
    if (!comp.unite(u, v))
      throw Error(ErrorCode::LoopContraction, "contracted edges contain a circuit (edge " + std::to_string(e) + ")");
  }
  std::vector<std::size_t> newid(g.vertex_count(), npos);
  std::size_t nv = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (comp.find(v) == v) newid[v] = nv++;
  auto vid = [&](std::size_t v) { return newid[comp.find(v)]; };
  std::vector<std::pair<std::size_t, std::size_t>> es;
  for (std::size_t e : surviving_edges(g, edges)) {
    auto [u, v] = g.endpoints(e);
    es.push_back({vid(u), vid(v)});
  }
  std::vector<std::pair<Label, std::size_t>> legs;
  for (std::size_t f : g.legs()) legs.push_back({*g.label_of(f), vid(g.vertex_of(f))});
  return DiscreteGraph::from_incidence(nv, es, legs);
}

DiscreteGraph contract(const DiscreteGraph& g, std::size_t e) {
  if (e < g.edge_count() && g.is_loop(e))
    throw Error(ErrorCode::LoopContraction, "edge " + std::to_string(e) + " is a loop");
  return contract_edges(g, {e});
}

std::vector<std::vector<std::size_t>> circuits(const DiscreteGraph& g) {
  // Edge subsets that are connected and 2-regular on their vertices.
  const std::size_t m = g.edge_count();
  if (m > 24) throw Error(ErrorCode::Unsupported, "too many edges for circuit enumeration");
  std::vector<std::vector<std::size_t>> out;
  for (unsigned long mask = 1; mask < (1ul << m); ++mask) {
    std::vector<std::size_t> deg(g.vertex_count(), 0), es;
    Components comp(g.vertex_count());
    for (std::size_t e = 0; e < m; ++e)
      if (mask >> e & 1) {
        es.push_back(e);
        auto [u, v] = g.endpoints(e);
        deg[u]++, deg[v]++;
        comp.unite(u, v);
      }
    bool ok = true;
    std::optional<std::size_t> rootc;
    for (std::size_t v = 0; v < g.vertex_count() && ok; ++v) {
      if (deg[v] == 0) continue;
      ok = deg[v] == 2;
      if (!rootc) rootc = comp.find(v);
      ok = ok && comp.find(v) == *rootc;
    }
    if (ok) out.push_back(es);
  }
  return out;
}

std::vector<FlagMap> isomorphisms(const DiscreteGraph& a, const DiscreteGraph& b) {
  std::vector<FlagMap> out;
  if (a.flag_count() != b.flag_count() || a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count())
    return out;
  {
    std::vector<Label> la, lb;
    for (const auto& [l, f] : a.marking()) la.push_back(l);
    for (const auto& [l, f] : b.marking()) lb.push_back(l);
    if (la != lb) return out;
  }
  VertexData da = vertex_data(a), db = vertex_data(b);
  const std::size_t n = a.vertex_count();
  std::vector<std::size_t> phi(n, npos);
  std::vector<bool> used(n, false);
  std::vector<std::vector<std::size_t>> vertex_maps;
  std::function<void(std::size_t)> assign = [&](std::size_t v) {
    if (v == n) {
      vertex_maps.push_back(phi);
      return;
    }
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || da.valency[v] != db.valency[w] || da.legs[v] != db.legs[w] || da.mult[v][v] != db.mult[w][w])
        continue;
      bool ok = true;
      for (std::size_t u = 0; u < v && ok; ++u) ok = da.mult[v][u] == db.mult[w][phi[u]];
      if (!ok) continue;
      phi[v] = w, used[w] = true;
      assign(v + 1);
      used[w] = false;
    }
  };
  assign(0);

  for (const auto& vm : vertex_maps) {
    // Group edges by (ordered) endpoint pair, then choose bijections within groups.
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> ga, gb;
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
      auto [u, v] = a.endpoints(e);
      ga[std::minmax(vm[u], vm[v])].push_back(e);
    }
    for (std::size_t e = 0; e < b.edge_count(); ++e) {
      auto [u, v] = b.endpoints(e);
      gb[std::minmax(u, v)].push_back(e);
    }
    std::vector<std::vector<std::vector<std::pair<std::size_t, std::size_t>>>> choices;
    for (const auto& [key, ea] : ga) {
      const auto& eb = gb[key];
      std::vector<std::size_t> perm(eb.size());
      std::iota(perm.begin(), perm.end(), 0);
      std::vector<std::vector<std::pair<std::size_t, std::size_t>>> options;
      do {
        // Orientation choices: forced for non-loops, two for loops.
        const bool loop = key.first == key.second;
        const std::size_t k = ea.size();
        for (unsigned long flips = 0; flips < (loop ? (1ul << k) : 1ul); ++flips) {
          std::vector<std::pair<std::size_t, std::size_t>> opt;
          for (std::size_t i = 0; i < k; ++i) {
            auto [fa1, fa2] = a.edges()[ea[i]];
            auto [fb1, fb2] = b.edges()[eb[perm[i]]];
            bool swap = loop ? (flips >> i & 1) : vm[a.vertex_of(fa1)] != b.vertex_of(fb1);
            if (swap) std::swap(fb1, fb2);
            opt.push_back({fa1, fb1});
            opt.push_back({fa2, fb2});
          }
          options.push_back(std::move(opt));
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      choices.push_back(std::move(options));
    }
    FlagMap base(a.flag_count(), npos);
    for (std::size_t v = 0; v < n; ++v) base[a.vertices()[v]] = b.vertices()[vm[v]];
    for (const auto& [l, f] : a.marking()) base[f] = b.leg(l);
    cartesian(choices, 0, base, out);
  }
  return out;
}

std::optional<FlagMap> find_isomorphism(const DiscreteGraph& a, const DiscreteGraph& b) {
  if (canonical_key(a) != canonical_key(b)) return std::nullopt;
  auto all = isomorphisms(a, b);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::vector<std::size_t> edge_map(const DiscreteGraph& a, const DiscreteGraph& b, const FlagMap& f) {
  std::vector<std::size_t> out;
  for (const auto& [f1, f2] : a.edges()) out.push_back(*b.edge_of(f[f1]));
  return out;
}

std::string canonical_key(const DiscreteGraph& g) {
  CanonicalSearch s{g, vertex_data(g), std::nullopt, std::nullopt};
  s.run(initial_colours(s.d));
  return *s.best;
}

CanonicalForm canonical_form(const DiscreteGraph& g) {
  CanonicalSearch s{g, vertex_data(g), std::nullopt, std::nullopt};
  s.run(initial_colours(s.d));
  CanonicalForm out;
  out.key = *s.best;
  out.graph = DiscreteGraph::from_incidence(s.best_inc->vertices, s.best_inc->edges, s.best_inc->legs);
  out.to_canonical = isomorphisms(g, out.graph).front();
  out.automorphisms = isomorphisms(g, g);
  return out;
}

std::vector<std::size_t> GraphCategory::maximal() const {
  std::vector<std::size_t> out;
  const std::size_t top = 3 * genus + marks.size() - 3;
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i].edge_count() == top) out.push_back(i);
  return out;
}

std::optional<std::size_t> GraphCategory::find(const DiscreteGraph& g) const {
  std::string k = canonical_key(g);
  for (std::size_t i = 0; i < keys.size(); ++i)
    if (keys[i] == k) return i;
  return std::nullopt;
}

std::vector<std::size_t> GraphCategory::hom(std::size_t source, std::size_t target) const {
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < morphisms.size(); ++m)
    if (morphisms[m].source == source && morphisms[m].target == target) out.push_back(m);
  return out;
}

Label loop_leg_label(std::size_t i, bool star) { return "^" + std::to_string(i) + (star ? "*" : ""); }

std::vector<DiscreteGraph> trivalent_trees(const std::vector<Label>& marks) {
  if (marks.size() < 3) throw Error(ErrorCode::UnstableParameters, "trivalent trees need at least three legs");
  // Leaf insertion: the leg k is attached to a new vertex subdividing an edge or a leg.
  struct Tree {
    std::size_t nv;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::pair<Label, std::size_t>> legs;
  };
  std::vector<Tree> cur{{1, {}, {{marks[0], 0}, {marks[1], 0}, {marks[2], 0}}}};
  for (std::size_t k = 3; k < marks.size(); ++k) {
    std::vector<Tree> next;
    for (const Tree& t : cur) {
      for (std::size_t e = 0; e < t.edges.size(); ++e) {
        Tree s = t;
        std::size_t w = s.nv++;
        auto [u, v] = s.edges[e];
        s.edges[e] = {u, w};
        s.edges.push_back({w, v});
        s.legs.push_back({marks[k], w});
        next.push_back(std::move(s));
      }
      for (std::size_t l = 0; l < t.legs.size(); ++l) {
        Tree s = t;
        std::size_t w = s.nv++;
        s.edges.push_back({s.legs[l].second, w});
        s.legs[l].second = w;
        s.legs.push_back({marks[k], w});
        next.push_back(std::move(s));
      }
    }
    cur = std::move(next);
  }
  std::vector<DiscreteGraph> out;
  for (const Tree& t : cur) out.push_back(DiscreteGraph::from_incidence(t.nv, t.edges, t.legs));
  return out;
}

SpanningTreeGraph join_loop_legs(const DiscreteGraph& tree, std::size_t g) {
  std::vector<std::size_t> inv = tree.involutions();
  std::map<Label, std::size_t> marking;
  std::set<Label> loop_labels;
  for (std::size_t i = 1; i <= g; ++i) {
    std::size_t a = tree.leg(loop_leg_label(i, false)), b = tree.leg(loop_leg_label(i, true));
    inv[a] = b, inv[b] = a;
    loop_labels.insert(loop_leg_label(i, false));
    loop_labels.insert(loop_leg_label(i, true));
  }
  for (const auto& [l, f] : tree.marking())
    if (!loop_labels.count(l)) marking[l] = f;
  SpanningTreeGraph out;
  out.graph = DiscreteGraph::make(tree.roots(), std::move(inv), std::move(marking));
  for (const auto& [f1, f2] : tree.edges()) out.tree_edge.push_back(*out.graph.edge_of(f1));
  for (std::size_t i = 1; i <= g; ++i) out.loop_edge.push_back(*out.graph.edge_of(tree.leg(loop_leg_label(i, false))));
  return out;
}

GraphCategory enumerate_category(std::size_t g, const std::vector<Label>& marks) {
  if (2 * g + marks.size() <= 2)
    throw Error(ErrorCode::UnstableParameters,
                "2g + #A - 2 must be positive (g = " + std::to_string(g) + ", #A = " + std::to_string(marks.size()) + ")");
  {
    std::set<Label> s(marks.begin(), marks.end());
    if (s.size() != marks.size()) throw Error(ErrorCode::UnstableParameters, "repeated mark label");
  }
  std::vector<Label> all = marks;
  for (std::size_t i = 1; i <= g; ++i) {
    all.push_back(loop_leg_label(i, false));
    all.push_back(loop_leg_label(i, true));
  }
  GraphCategory cat;
  cat.genus = g;
  cat.marks = marks;
  std::map<std::string, DiscreteGraph> found;
  std::vector<DiscreteGraph> frontier;
  for (const DiscreteGraph& t : trivalent_trees(all)) {
    DiscreteGraph G = join_loop_legs(t, g).graph;
    std::string k = canonical_key(G);
    if (found.count(k)) continue;
    CanonicalForm cf = canonical_form(G);
    found.emplace(k, cf.graph);
    frontier.push_back(cf.graph);
  }
  // Saturate downward by single non-loop edge contractions.
  while (!frontier.empty()) {
    std::vector<DiscreteGraph> next;
    for (const DiscreteGraph& G : frontier)
      for (std::size_t e = 0; e < G.edge_count(); ++e) {
        if (G.is_loop(e)) continue;
        DiscreteGraph H = contract(G, e);
        std::string k = canonical_key(H);
        if (found.count(k)) continue;
        CanonicalForm cf = canonical_form(H);
        found.emplace(k, cf.graph);
        next.push_back(cf.graph);
      }
    frontier = std::move(next);
  }
  // Order: more edges first, then by key.
  std::vector<std::pair<std::string, DiscreteGraph>> objs(found.begin(), found.end());
  std::stable_sort(objs.begin(), objs.end(),
                   [](const auto& x, const auto& y) { return x.second.edge_count() > y.second.edge_count(); });
  std::map<std::string, std::size_t> index;
  for (auto& [k, G] : objs) {
    index[k] = cat.objects.size();
    cat.keys.push_back(k);
    cat.automorphisms.push_back(isomorphisms(G, G));
    cat.objects.push_back(std::move(G));
  }
  // Morphisms: every forest K of a source and every isomorphism G/K -> target.
  for (std::size_t s = 0; s < cat.objects.size(); ++s) {
    const DiscreteGraph& G = cat.objects[s];
    const std::size_t m = G.edge_count();
    std::set<std::pair<std::size_t, std::vector<std::size_t>>> seen;
    for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
      std::vector<std::size_t> K;
      for (std::size_t e = 0; e < m; ++e)
        if (mask >> e & 1) K.push_back(e);
      if (!is_forest(G, K)) continue;
      DiscreteGraph H = contract_edges(G, K);
      std::size_t t = index.at(canonical_key(H));
      std::vector<std::size_t> keep = surviving_edges(G, K);
      for (const FlagMap& f : isomorphisms(cat.objects[t], H)) {
        std::vector<std::size_t> em;
        for (std::size_t e : edge_map(cat.objects[t], H, f)) em.push_back(keep[e]);
        if (!seen.insert({t, em}).second) continue;
        cat.morphisms.push_back({s, t, K, em});
      }
    }
  }
  return cat;
}

ForgetResult forget_leg(const DiscreteGraph& g, const Label& a) {
  if (!g.marking().count(a)) throw Error(ErrorCode::UnstableAfterForgetting, "no leg marked " + a);
  Incidence inc = incidence(g);
  const std::size_t la = g.leg(a);
  const std::size_t v = g.vertex_of(la);
  ForgetResult out;
  std::vector<std::pair<Label, std::size_t>> legs;
  for (const auto& l : inc.legs)
    if (l.first != a) legs.push_back(l);
  const std::size_t m = g.edge_count();

  if (g.valency(v) > 3) {
    out.kind = ForgetResult::Case::HighValency;
    out.graph = DiscreteGraph::from_incidence(inc.vertices, inc.edges, legs);
    out.eta = IntMatrix::identity(m);
    return out;
  }
  if (g.valency(v) < 3) throw Error(ErrorCode::UnstableAfterForgetting, "vertex of " + a + " is not trivalent");
  // Half-edges at v.
  std::vector<std::size_t> halves;
  for (std::size_t f = 0; f < g.flag_count(); ++f)
    if (g.root(f) == g.vertices()[v] && f != g.vertices()[v] && f != la && g.edge_of(f)) halves.push_back(f);
  auto renumber = [&](std::size_t w) { return w > v ? w - 1 : w; };

  if (halves.size() == 2) {
    std::size_t e1 = *g.edge_of(halves[0]), e2 = *g.edge_of(halves[1]);
    if (e1 == e2) throw Error(ErrorCode::UnstableAfterForgetting, "forgetting " + a + " leaves a bare loop");
    out.kind = ForgetResult::Case::TwoEdges;
    auto other = [&](std::size_t f) { return g.vertex_of(g.involution(f)); };
    std::size_t lo = std::min(e1, e2), hi = std::max(e1, e2);
    std::vector<std::pair<std::size_t, std::size_t>> es;
    std::vector<std::vector<std::size_t>> rows;  // source edges summed into each new edge
    for (std::size_t e = 0; e < m; ++e) {
      if (e == hi) continue;
      if (e == lo) {
        es.push_back({renumber(other(halves[0])), renumber(other(halves[1]))});
        rows.push_back({e1, e2});
      } else {
        es.push_back({renumber(inc.edges[e].first), renumber(inc.edges[e].second)});
        rows.push_back({e});
      }
    }
    for (auto& l : legs) l.second = renumber(l.second);
    out.graph = DiscreteGraph::from_incidence(inc.vertices - 1, es, legs);
    out.eta = IntMatrix(es.size(), m);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t e : rows[i]) out.eta(i, e) = 1;
    return out;
  }
  if (halves.size() == 1) {
    out.kind = ForgetResult::Case::ExtraLeg;
    std::size_t f = halves[0], e0 = *g.edge_of(f);
    std::size_t w = g.vertex_of(g.involution(f));
    std::vector<std::pair<std::size_t, std::size_t>> es;
    std::vector<std::size_t> keep;
    for (std::size_t e = 0; e < m; ++e)
      if (e != e0) {
        es.push_back({renumber(inc.edges[e].first), renumber(inc.edges[e].second)});
        keep.push_back(e);
      }
    for (auto& l : legs) {
      if (l.second == v) {
        out.other_leg = l.first;
        l.second = w;
      }
      l.second = renumber(l.second);
    }
    out.removed_edge = e0;
    out.graph = DiscreteGraph::from_incidence(inc.vertices - 1, es, legs);
    out.eta = IntMatrix(es.size(), m);
    for (std::size_t i = 0; i < keep.size(); ++i) out.eta(i, keep[i]) = 1;
    return out;
  }
  throw Error(ErrorCode::UnstableAfterForgetting, "vertex of " + a + " carries only legs");
}

DiscreteGraph clutch(const DiscreteGraph& a, const DiscreteGraph& b, const Label& c) {
  if (!a.marking().count(c) || !b.marking().count(c))
    throw Error(ErrorCode::BadLabelIntersection, "both graphs must carry the leg " + c);
  for (const auto& [l, f] : a.marking())
    if (l != c && b.marking().count(l)) throw Error(ErrorCode::BadLabelIntersection, "label " + l + " is shared");
  Incidence ia = incidence(a), ib = incidence(b);
  const std::size_t va = a.vertex_of(a.leg(c)), vb = b.vertex_of(b.leg(c));
  auto mapb = [&](std::size_t w) { return w == vb ? va : ia.vertices + (w > vb ? w - 1 : w); };
  std::vector<std::pair<std::size_t, std::size_t>> es = ia.edges;
  for (const auto& [u, w] : ib.edges) es.push_back({mapb(u), mapb(w)});
  std::vector<std::pair<Label, std::size_t>> legs;
  for (const auto& l : ia.legs)
    if (l.first != c) legs.push_back(l);
  for (const auto& [l, w] : ib.legs)
    if (l != c) legs.push_back({l, mapb(w)});
  return DiscreteGraph::from_incidence(ia.vertices + ib.vertices - 1, es, legs);
}

Poic cone_of_metrics(const DiscreteGraph& g) {
  const std::size_t m = g.edge_count();
  if (m == 0) return Poic::point();
  std::vector<PoicConstraint> cons;
  for (std::size_t e = 0; e < m; ++e) cons.push_back({unit_vector(m, e), false});
  for (const auto& c : circuits(g)) {
    Vec n(m, Int(0));
    for (std::size_t e : c) n[e] = 1;
    cons.push_back({n, true});
  }
  return Poic::make(m, cons);
}

}  // namespace tropocone
