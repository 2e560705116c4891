#include "tropocone/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tropocone/error.hpp"

namespace tropocone {

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::SchemaError, (where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(where, "missing field \"" + key + "\"");
  return *it;
}

const Json& array_field(const Json& j, const std::string& key, const std::string& where) {
  const Json& a = field(j, key, where);
  if (!a.is_array()) schema_error(where + "/" + key, "expected an array");
  return a;
}

std::size_t count_from_json(const Json& j, const std::string& where) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<std::size_t>(j.get<long long>());
  schema_error(where, "expected a non-negative integer");
}

bool bool_from_json(const Json& j, const std::string& where) {
  if (!j.is_boolean()) schema_error(where, "expected a boolean");
  return j.get<bool>();
}

std::string string_from_json(const Json& j, const std::string& where) {
  if (!j.is_string()) schema_error(where, "expected a string");
  return j.get<std::string>();
}

void check_type(const Json& j, const std::string& type, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  auto it = j.find("type");
  if (it != j.end() && (!it->is_string() || it->get<std::string>() != type))
    schema_error(where + "/type", "expected \"" + type + "\"");
}

std::vector<std::size_t> counts_from_json(const Json& a, const std::string& where) {
  if (!a.is_array()) schema_error(where, "expected an array");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(count_from_json(a[i], where + "/" + std::to_string(i)));
  return out;
}

std::vector<IntMatrix> matrices_from_json(const Json& a, const std::string& where) {
  if (!a.is_array()) schema_error(where, "expected an array");
  std::vector<IntMatrix> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(matrix_from_json(a[i], where + "/" + std::to_string(i)));
  return out;
}

Json matrices_to_json(const std::vector<IntMatrix>& ms) {
  Json a = Json::array();
  for (const auto& m : ms) a.push_back(to_json(m));
  return a;
}

}  // namespace

Json to_json(const Int& x) { return x.get_str(); }

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json to_json(const IntMatrix& m) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k) entries.push_back(to_json(m(i, k)));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Int int_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
  if (!j.is_string()) schema_error(where, "expected an integer as a decimal string");
  const std::string s = j.get<std::string>();
  const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
  if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
    schema_error(where, "\"" + s + "\" is not a decimal integer");
  return Int(s);
}

Vec vec_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array of integers");
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(int_from_json(j[i], where + "/" + std::to_string(i)));
  return v;
}

IntMatrix matrix_from_json(const Json& j, const std::string& where) {
  const std::size_t rows = count_from_json(field(j, "rows", where), where + "/rows");
  const std::size_t cols = count_from_json(field(j, "cols", where), where + "/cols");
  Vec entries = vec_from_json(field(j, "entries", where), where + "/entries");
  if (entries.size() != rows * cols)
    schema_error(where + "/entries", "expected " + std::to_string(rows * cols) + " entries");
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = entries[i * cols + k];
  return m;
}

Json to_json(const Poic& p) {
  Json constraints = Json::array();
  for (const auto& c : p.constraints()) constraints.push_back(Json{{"normal", to_json(c.normal)}, {"strict", c.strict}});
  Json j{{"type", "poic"}, {"rank", p.rank()}, {"constraints", constraints}};
  if (!p.representable_by_halfspaces()) {
    Json retained = Json::array();
    for (std::size_t f : p.retained_faces()) retained.push_back(p.closure_faces()[f].tight);
    j["retained"] = retained;
  }
  return j;
}

Poic poic_from_json(const Json& j, const std::string& where) {
  check_type(j, "poic", where);
  const std::size_t rank = count_from_json(field(j, "rank", where), where + "/rank");
  const Json& cs = array_field(j, "constraints", where);
  std::vector<PoicConstraint> constraints;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string w = where + "/constraints/" + std::to_string(i);
    PoicConstraint c{vec_from_json(field(cs[i], "normal", w), w + "/normal"),
                     bool_from_json(field(cs[i], "strict", w), w + "/strict")};
    if (c.normal.size() != rank) schema_error(w + "/normal", "expected " + std::to_string(rank) + " entries");
    constraints.push_back(std::move(c));
  }
  auto retained = j.find("retained");
  if (retained == j.end()) return Poic::make(rank, constraints);
  std::vector<Vec> normals;
  for (const auto& c : constraints) normals.push_back(c.normal);
  const ClosedCone closure = ClosedCone::from_inequalities(rank, normals);
  if (!retained->is_array()) schema_error(where + "/retained", "expected an array");
  std::vector<std::vector<std::size_t>> faces;
  for (std::size_t i = 0; i < retained->size(); ++i) {
    faces.push_back(counts_from_json((*retained)[i], where + "/retained/" + std::to_string(i)));
    for (std::size_t f : faces.back())
      if (f >= closure.facets().size()) schema_error(where + "/retained/" + std::to_string(i), "unknown facet index");
  }
  return Poic::from_closure_faces(closure, faces);
}

Json to_json(const PoicComplex& c) {
  Json cones = Json::array(), relations = Json::array();
  for (const auto& p : c.cones()) cones.push_back(to_json(p));
  for (const auto& r : c.relations())
    relations.push_back(Json{{"lower", r.lower}, {"upper", r.upper}, {"matrix", to_json(r.matrix)}});
  return Json{{"type", "complex"}, {"cones", cones}, {"labels", c.labels()}, {"relations", relations}};
}

Json to_json(const LinearComplex& c) {
  Json j = to_json(c.complex);
  j["linear"] = Json{{"target_rank", c.linear.target_rank}, {"maps", matrices_to_json(c.linear.maps)}};
  return j;
}

PoicComplex complex_from_json(const Json& j, const std::string& where) {
  check_type(j, "complex", where);
  const Json& cs = array_field(j, "cones", where);
  std::vector<Poic> cones;
  for (std::size_t i = 0; i < cs.size(); ++i) cones.push_back(poic_from_json(cs[i], where + "/cones/" + std::to_string(i)));
  std::vector<std::string> labels;
  if (auto it = j.find("labels"); it != j.end()) {
    if (!it->is_array() || it->size() != cones.size())
      schema_error(where + "/labels", "expected one label per cone");
    for (std::size_t i = 0; i < it->size(); ++i)
      labels.push_back(string_from_json((*it)[i], where + "/labels/" + std::to_string(i)));
  }
  const Json& rs = array_field(j, "relations", where);
  std::vector<Relation> relations;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const std::string w = where + "/relations/" + std::to_string(i);
    Relation r{count_from_json(field(rs[i], "lower", w), w + "/lower"),
               count_from_json(field(rs[i], "upper", w), w + "/upper"),
               matrix_from_json(field(rs[i], "matrix", w), w + "/matrix")};
    if (r.lower >= cones.size() || r.upper >= cones.size()) schema_error(w, "unknown cone");
    relations.push_back(std::move(r));
  }
  return PoicComplex::make(std::move(cones), relations, std::move(labels));
}

bool has_linear_structure(const Json& j) { return j.is_object() && j.contains("linear"); }

LinearComplex linear_complex_from_json(const Json& j, const std::string& where) {
  LinearComplex lc{complex_from_json(j, where), {}};
  const Json& lin = field(j, "linear", where);
  lc.linear.target_rank = count_from_json(field(lin, "target_rank", where + "/linear"), where + "/linear/target_rank");
  lc.linear.maps = matrices_from_json(field(lin, "maps", where + "/linear"), where + "/linear/maps");
  if (lc.linear.maps.size() != lc.complex.size()) schema_error(where + "/linear/maps", "expected one map per cone");
  for (std::size_t p = 0; p < lc.complex.size(); ++p)
    if (lc.linear.maps[p].rows() != lc.linear.target_rank || lc.linear.maps[p].cols() != lc.complex.dim(p))
      schema_error(where + "/linear/maps/" + std::to_string(p), "matrix shape does not match the cone");
  check_linear_structure(lc.complex, lc.linear);
  return lc;
}

Json to_json(const PoicSpace& x) {
  Json objects = Json::array(), labels = Json::array(), morphisms = Json::array();
  for (std::size_t i = 0; i < x.size(); ++i) {
    objects.push_back(to_json(x.object(i)));
    labels.push_back(x.label(i));
  }
  for (const auto& m : x.morphisms())
    morphisms.push_back(Json{{"source", m.source}, {"target", m.target}, {"matrix", to_json(m.matrix)}});
  return Json{{"type", "space"}, {"objects", objects}, {"labels", labels}, {"morphisms", morphisms}};
}

PoicSpace space_from_json(const Json& j, const std::string& where) {
  check_type(j, "space", where);
  const Json& os = array_field(j, "objects", where);
  std::vector<Poic> objects;
  for (std::size_t i = 0; i < os.size(); ++i) objects.push_back(poic_from_json(os[i], where + "/objects/" + std::to_string(i)));
  std::vector<std::string> labels;
  if (auto it = j.find("labels"); it != j.end()) {
    if (!it->is_array() || it->size() != objects.size())
      schema_error(where + "/labels", "expected one label per object");
    for (std::size_t i = 0; i < it->size(); ++i)
      labels.push_back(string_from_json((*it)[i], where + "/labels/" + std::to_string(i)));
  }
  const Json& ms = array_field(j, "morphisms", where);
  std::vector<SpaceMorphism> morphisms;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const std::string w = where + "/morphisms/" + std::to_string(i);
    SpaceMorphism m{count_from_json(field(ms[i], "source", w), w + "/source"),
                    count_from_json(field(ms[i], "target", w), w + "/target"),
                    matrix_from_json(field(ms[i], "matrix", w), w + "/matrix")};
    if (m.source >= objects.size() || m.target >= objects.size()) schema_error(w, "unknown object");
    morphisms.push_back(std::move(m));
  }
  return PoicSpace::make(std::move(objects), morphisms, std::move(labels));
}

Json to_json(const Weight& w) {
  Json values = Json::array();
  for (const auto& [cone, value] : w.normalized().values)
    values.push_back(Json{{"cone", cone}, {"value", to_json(value)}});
  return Json{{"type", "weight"}, {"dim", w.dim}, {"values", values}};
}

Weight weight_from_json(const Json& j, const std::string& where) {
  check_type(j, "weight", where);
  Weight w;
  w.dim = count_from_json(field(j, "dim", where), where + "/dim");
  const Json& vs = array_field(j, "values", where);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string v = where + "/values/" + std::to_string(i);
    const std::size_t cone = count_from_json(field(vs[i], "cone", v), v + "/cone");
    if (w.values.count(cone)) schema_error(v + "/cone", "duplicate cone " + std::to_string(cone));
    w.values[cone] = int_from_json(field(vs[i], "value", v), v + "/value");
  }
  return w;
}

Json to_json(const ComplexMorphism& m) {
  return Json{{"type", "morphism"}, {"cone_map", m.cone_map}, {"matrices", matrices_to_json(m.matrices)}};
}

ComplexMorphism morphism_from_json(const Json& j, const std::string& where) {
  check_type(j, "morphism", where);
  ComplexMorphism m{counts_from_json(field(j, "cone_map", where), where + "/cone_map"),
                    matrices_from_json(field(j, "matrices", where), where + "/matrices")};
  if (m.cone_map.size() != m.matrices.size()) schema_error(where + "/matrices", "expected one matrix per cone");
  return m;
}

Json to_json(const Subdivision& s) {
  return Json{{"type", "subdivision"},
              {"source", to_json(s.source)},
              {"target", to_json(s.target)},
              {"cone_map", s.cone_map},
              {"matrices", matrices_to_json(s.matrices)}};
}

Subdivision subdivision_from_json(const Json& j, const std::string& where) {
  check_type(j, "subdivision", where);
  Subdivision s;
  s.source = complex_from_json(field(j, "source", where), where + "/source");
  s.target = complex_from_json(field(j, "target", where), where + "/target");
  s.cone_map = counts_from_json(field(j, "cone_map", where), where + "/cone_map");
  s.matrices = matrices_from_json(field(j, "matrices", where), where + "/matrices");
  if (s.cone_map.size() != s.source.size() || s.matrices.size() != s.source.size())
    schema_error(where, "expected one cone_map entry and one matrix per source cone");
  for (std::size_t p = 0; p < s.source.size(); ++p)
    if (s.cone_map[p] >= s.target.size()) schema_error(where + "/cone_map/" + std::to_string(p), "unknown target cone");
  return s;
}

Json to_json(const Cycle& c) {
  return Json{{"type", "cycle"}, {"subdivision", to_json(c.subdivision)}, {"weight", to_json(c.weight)}};
}

Cycle cycle_from_json(const Json& j, const std::string& where) {
  check_type(j, "cycle", where);
  return {subdivision_from_json(field(j, "subdivision", where), where + "/subdivision"),
          weight_from_json(field(j, "weight", where), where + "/weight")};
}

Json to_json(const DiscreteGraph& g) {
  Json marking = Json::object();
  for (const auto& [label, flag] : g.marking()) marking[label] = flag;
  return Json{{"type", "graph"}, {"roots", g.roots()}, {"involution", g.involutions()}, {"marking", marking}};
}

DiscreteGraph graph_from_json(const Json& j, const std::string& where) {
  check_type(j, "graph", where);
  std::vector<std::size_t> roots = counts_from_json(field(j, "roots", where), where + "/roots");
  std::vector<std::size_t> inv = counts_from_json(field(j, "involution", where), where + "/involution");
  const Json& m = field(j, "marking", where);
  if (!m.is_object()) schema_error(where + "/marking", "expected an object");
  std::map<Label, std::size_t> marking;
  for (auto it = m.begin(); it != m.end(); ++it)
    marking[it.key()] = count_from_json(it.value(), where + "/marking/" + it.key());
  return DiscreteGraph::make(std::move(roots), std::move(inv), std::move(marking));
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, source + " at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json read_json_file(const std::string& path) { return parse_json(read_file(path), path); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace tropocone
