#include "tropocone/commands.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

#include "tropocone/error.hpp"
#include "tropocone/fibration.hpp"
#include "tropocone/moduli.hpp"
#include "tropocone/tropical_fibrations.hpp"

namespace tropocone {

namespace {

// Input problems detected while reading the request (exit code 2).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] void bad_parameter(const std::string& name, const std::string& what) {
  throw InputError("parameter \"" + name + "\": " + what);
}

class Context {
 public:
  explicit Context(const Request& r) : request_(r) {}

  Json input(const std::string& name) {
    auto it = request_.inputs.find(name);
    if (it == request_.inputs.end()) throw InputError("missing input \"" + name + "\"");
    const std::string bytes = read_file(it->second);
    inputs_.push_back(Json{{"name", name}, {"path", it->second}, {"digest", digest(bytes)}});
    return parse_json(bytes, it->second);
  }
  bool has_input(const std::string& name) const { return request_.inputs.count(name) > 0; }

  bool has(const std::string& name) const { return request_.parameters.contains(name); }
  std::size_t count(const std::string& name) const {
    if (!has(name)) bad_parameter(name, "required");
    return count_or(name, 0);
  }
  std::size_t count_or(const std::string& name, std::size_t fallback) const {
    if (!has(name)) return fallback;
    const Json& j = request_.parameters[name];
    if (j.is_number_unsigned()) return j.get<std::size_t>();
    if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<std::size_t>(j.get<long long>());
    if (j.is_string() && !j.get<std::string>().empty() &&
        j.get<std::string>().find_first_not_of("0123456789") == std::string::npos)
      return std::stoul(j.get<std::string>());
    bad_parameter(name, "expected a non-negative integer");
  }
  std::string string_or(const std::string& name, const std::string& fallback) const {
    if (!has(name)) return fallback;
    const Json& j = request_.parameters[name];
    if (!j.is_string()) bad_parameter(name, "expected a string");
    return j.get<std::string>();
  }
  bool flag(const std::string& name, bool fallback) const {
    if (!has(name)) return fallback;
    const Json& j = request_.parameters[name];
    if (!j.is_boolean()) bad_parameter(name, "expected a boolean");
    return j.get<bool>();
  }
  std::vector<Label> labels(const std::string& name) const {
    std::vector<Label> out;
    if (!has(name)) return out;
    const Json& j = request_.parameters[name];
    if (!j.is_array()) bad_parameter(name, "expected a list of labels");
    for (const auto& x : j) {
      if (x.is_string())
        out.push_back(x.get<std::string>());
      else if (x.is_number_integer())
        out.push_back(std::to_string(x.get<long long>()));
      else
        bad_parameter(name, "labels are strings or integers");
    }
    return out;
  }
  Vec vector(const std::string& name) const {
    if (!has(name)) bad_parameter(name, "required");
    try {
      return vec_from_json(request_.parameters[name], "/parameters/" + name);
    } catch (const Error& e) {
      bad_parameter(name, e.what());
    }
  }

  const Json& inputs() const { return inputs_; }

 private:
  const Request& request_;
  Json inputs_ = Json::array();
};

// Result of one command: the report's "result", the verdict, and optionally a
// document that "emit" may select.
struct Result {
  Json body = Json::object();
  bool ok = true;
  std::map<std::string, Json> documents;
};

Json weight_values(const Weight& w, const std::vector<std::size_t>& cones) {
  Json v = Json::array();
  for (std::size_t c : cones) v.push_back(to_json(w.at(c)));
  return v;
}

Json certificates(const BalanceReport& r) {
  Json c = Json::array();
  for (const auto& [cone, lambda] : r.certificates) c.push_back(Json{{"cone", cone}, {"lambda", to_json(lambda)}});
  return c;
}

Json lattice_json(const LinearComplex& lc, const WeightLattice& lattice) {
  Json basis = Json::array(), certs = Json::array();
  for (const auto& w : lattice.basis) {
    basis.push_back(weight_values(w, lattice.cones));
    certs.push_back(certificates(check_balanced(lc, w)));
  }
  return Json{{"k", lattice.dim}, {"rank", lattice.rank()}, {"cones", lattice.cones}, {"basis", basis},
              {"certificates", certs}};
}

Json subdivision_report(const SubdivisionReport& r) {
  return Json{{"functorial", r.functorial},
              {"partition", r.partition},
              {"face_lifting", r.face_lifting},
              {"violations", r.violations}};
}

Json fibration_report(const FibrationReport& r) {
  return Json{{"essentially_surjective", r.essentially_surjective},
              {"interiors", r.interiors},
              {"lifting", r.lifting},
              {"violations", r.violations}};
}

Json graph_entry(std::size_t i, const GraphCategory& c) {
  const DiscreteGraph& g = c.objects[i];
  return Json{{"index", i},
              {"edges", g.edge_count()},
              {"vertices", g.vertex_count()},
              {"automorphisms", c.automorphisms[i].size()},
              {"description", g.to_string()},
              {"graph", to_json(g)}};
}

Result cmd_enumerate(Context& ctx) {
  GraphCategory c = enumerate_category(ctx.count_or("genus", 0), ctx.labels("marks"));
  Json objects = Json::array();
  for (std::size_t i = 0; i < c.objects.size(); ++i) objects.push_back(graph_entry(i, c));
  Result r;
  r.body = Json{{"classes", c.objects.size()},
                {"maximal", c.maximal()},
                {"morphisms", c.morphisms.size()},
                {"objects", objects}};
  return r;
}

Result cmd_build_moduli(Context& ctx) {
  Moduli m = build_moduli(ctx.count_or("genus", 0), ctx.labels("marks"));
  Result r;
  r.body = Json{{"objects", m.space.size()},
                {"classes", m.space.classes().size()},
                {"morphisms", m.space.morphisms().size()}};
  r.documents["space"] = to_json(m.space);
  if (m.rational) {
    r.documents["complex"] = to_json(*m.rational);
    r.body["distance_rank"] = m.distance->rank();
  }
  r.body["space"] = r.documents["space"];
  if (m.rational) r.body["complex"] = r.documents["complex"];
  return r;
}

Result cmd_weights(Context& ctx) {
  LinearComplex lc = linear_complex_from_json(ctx.input("complex"));
  Result r;
  r.body = lattice_json(lc, minkowski_basis(lc, ctx.count("k")));
  return r;
}

Result cmd_equivariant(Context& ctx) {
  SpanningTreeFibration st = spanning_tree_fibration(ctx.count_or("genus", 0), ctx.labels("marks"));
  const Fibration& fib = st.fibration;
  const std::size_t top = fib.source.pure_dim().value_or(fib.source.max_dim());
  const std::size_t k = ctx.count_or("k", top);
  const Subdivision s = identity_subdivision(fib.source);
  CompatibilityReport compat = check_compatibility(fib, s);
  EquivariantWeightLattice e = equivariant_basis(fib, k, s);
  Result r;
  r.body = lattice_json(fib.linear_complex(), e.lattice);
  Json pairs = Json::array();
  for (const auto& [a, b] : e.equal_pairs) pairs.push_back(Json::array({a, b}));
  r.body["equal_pairs"] = pairs;
  r.body["stability_triples"] = compat.triples.size();
  return r;
}

Result cmd_st_fibration(Context& ctx) {
  SpanningTreeFibration st = spanning_tree_fibration(ctx.count_or("genus", 0), ctx.labels("marks"));
  const Fibration& fib = st.fibration;
  FibrationReport rep = validate_fibration(fib);
  auto pure = fib.source.pure_dim();
  Result r;
  r.ok = rep.valid() && pure.has_value();
  r.body = Json{{"source_cones", fib.source.size()},
                {"target_objects", fib.target.size()},
                {"target_classes", fib.target.classes().size()},
                {"pure_dim", pure ? Json(*pure) : Json(nullptr)},
                {"valid", rep.valid()},
                {"checks", fibration_report(rep)}};
  if (pure) {
    EquivariantWeightLattice e = equivariant_basis(fib, *pure, identity_subdivision(fib.source));
    r.body["equivariant_rank"] = e.rank();
  }
  return r;
}

Result cmd_subdivide(Context& ctx) {
  const Json doc = ctx.input("complex");
  PoicComplex phi = complex_from_json(doc);
  const std::string mode = ctx.string_or("mode", "barycentric");
  Subdivision s;
  if (mode == "identity")
    s = identity_subdivision(phi);
  else if (mode == "barycentric")
    s = ord_subdivision(phi);
  else if (mode == "stellar") {
    const std::size_t cone = ctx.count("cone");
    if (cone >= phi.size()) bad_parameter("cone", "no such cone");
    s = stellar(phi, cone, ctx.vector("ray"));
  } else
    bad_parameter("mode", "expected identity, barycentric or stellar");
  SubdivisionReport rep = validate_subdivision(s);
  Result r;
  r.ok = rep.valid();
  r.body = Json{{"mode", mode}, {"source_cones", s.source.size()}, {"checks", subdivision_report(rep)}};
  r.documents["subdivision"] = to_json(s);
  r.body["subdivision"] = r.documents["subdivision"];
  return r;
}

Result cmd_pushforward(Context& ctx) {
  const Json src = ctx.input("source"), dst = ctx.input("target");
  PoicComplex phi = complex_from_json(src);
  ComplexMorphism f = morphism_from_json(ctx.input("morphism"));
  Weight w = weight_from_json(ctx.input("weight"));
  std::optional<LinearComplex> target_lc;
  PoicComplex psi = has_linear_structure(dst) ? (target_lc = linear_complex_from_json(dst))->complex
                                              : complex_from_json(dst);
  Result r;
  if (std::string why = check_complex_morphism(phi, psi, f); !why.empty()) {
    r.ok = false;
    r.body = Json{{"morphism", why}};
    return r;
  }
  ProperReport proper = is_weakly_proper(phi, psi, f);
  r.body["weakly_proper"] = proper.ok;
  if (!proper.ok) {
    r.ok = false;
    r.body["witness"] = proper.witness;
    return r;
  }
  Subdivision t = ctx.has_input("fine") ? subdivision_from_json(ctx.input("fine")) : pfine_refinement(phi, psi, f);
  Weight pushed = pushforward(phi, f, t, w);
  r.body["fine_cones"] = t.source.size();
  r.body["weight"] = to_json(pushed);
  if (target_lc) {
    LinearComplex fine{t.source, pullback_linear(t, target_lc->linear)};
    BalanceReport b = check_balanced(fine, pushed);
    r.body["balanced"] = b.balanced;
    r.body["certificates"] = certificates(b);
  }
  r.documents["weight"] = to_json(pushed);
  r.documents["cycle"] = to_json(Cycle{t, pushed});
  return r;
}

Result cmd_cycle_eq(Context& ctx) {
  Cycle a = cycle_from_json(ctx.input("a")), b = cycle_from_json(ctx.input("b"));
  Result r;
  r.ok = cycle_equal(a, b);
  r.body = Json{{"equal", r.ok}};
  return r;
}

Result cmd_clutch(Context& ctx) {
  Clutching c = clutching(ctx.count_or("left_genus", 0), ctx.labels("left_marks"), ctx.count_or("right_genus", 0),
                          ctx.labels("right_marks"));
  const PoicComplex& src = c.product.source;
  const PoicComplex& dst = c.target.fibration.source;
  const std::string why = check_fibration_morphism(c.product, c.target.fibration, c.morphism);
  Result r;
  r.body = Json{{"shared", c.shared},
                {"source_cones", src.size()},
                {"target_cones", dst.size()},
                {"morphism", why.empty() ? Json("ok") : Json(why)}};
  if (c.morphism.integral)
    r.body["integral"] = to_json(*c.morphism.integral);
  else
    r.body["integral_obstruction"] = *c.integral_obstruction;
  const ProperReport proper = is_proper_bounded(src, dst, c.morphism.complex_part);
  r.body["proper_bounded"] = proper.ok;
  if (!proper.ok) r.body["witness"] = proper.witness;
  r.ok = why.empty() && proper.ok;
  if (ctx.flag("push", true) && r.ok && c.morphism.integral) {
    const std::size_t k = src.pure_dim().value_or(src.max_dim());
    FibrationPushforward p = fibration_pushforward(c.product, c.target.fibration, c.morphism,
                                                   identity_subdivision(src), constant_weight(src, k, Int(1)));
    Json values = Json::array();
    for (const auto& [cone, value] : p.weight.normalized().values)
      values.push_back(Json{{"cone", cone}, {"label", p.compatible.source.label(cone)}, {"value", to_json(value)}});
    r.body["pushforward"] = Json{{"dim", p.weight.dim}, {"values", values}, {"equivariant", p.equivariant}};
    r.ok = r.ok && p.equivariant;
  }
  return r;
}

Result cmd_forget(Context& ctx) {
  const std::string mark = ctx.string_or("mark", "");
  if (mark.empty()) bad_parameter("mark", "required");
  Forgetful f = forgetful(ctx.count_or("genus", 0), ctx.labels("marks"), mark);
  const std::string why = check_fibration_morphism(f.from.fibration, f.to.fibration, f.morphism);
  const ProperReport proper =
      is_weakly_proper(f.from.fibration.source, f.to.fibration.source, f.morphism.complex_part);
  Json cones = Json::array();
  for (std::size_t p = 0; p < f.from.fibration.source.size(); ++p)
    cones.push_back(Json{{"cone", p},
                         {"label", f.from.fibration.source.label(p)},
                         {"image", f.morphism.complex_part.cone_map[p]},
                         {"matrix", to_json(f.morphism.complex_part.matrices[p])}});
  Result r;
  r.ok = why.empty() && proper.ok;
  r.body = Json{{"morphism", why.empty() ? Json("ok") : Json(why)},
                {"weakly_proper", proper.ok},
                {"cones", cones}};
  if (!proper.ok) r.body["witness"] = proper.witness;
  if (f.morphism.integral) r.body["integral"] = to_json(*f.morphism.integral);
  return r;
}

Result cmd_verify(Context& ctx) {
  Result r;
  bool any = false;
  if (ctx.has_input("subdivision")) {
    any = true;
    SubdivisionReport rep = validate_subdivision(subdivision_from_json(ctx.input("subdivision")));
    r.body["subdivision"] = subdivision_report(rep);
    r.ok = r.ok && rep.valid();
  }
  if (ctx.has_input("weight")) {
    any = true;
    LinearComplex lc = linear_complex_from_json(ctx.input("complex"));
    BalanceReport b = check_balanced(lc, weight_from_json(ctx.input("weight")));
    r.body["balancing"] = Json{{"balanced", b.balanced}, {"certificates", certificates(b)}};
    if (b.failing_cone) r.body["balancing"]["failing_cone"] = *b.failing_cone;
    r.ok = r.ok && b.balanced;
  } else if (ctx.has_input("complex")) {
    any = true;
    const Json doc = ctx.input("complex");
    if (has_linear_structure(doc))
      linear_complex_from_json(doc);
    else
      complex_from_json(doc);
    r.body["complex"] = "ok";
  }
  if (ctx.has_input("space")) {
    any = true;
    SpaceReport rep = validate_space(space_from_json(ctx.input("space")));
    r.body["space"] = Json{{"face_embeddings", rep.face_embeddings},
                           {"faces_realized", rep.faces_realized},
                           {"faces_unique", rep.faces_unique},
                           {"violations", rep.violations}};
    r.ok = r.ok && rep.valid();
  }
  if (!any) throw InputError("verify needs a subdivision, complex (with optional weight) or space input");
  return r;
}

const std::map<std::string, std::function<Result(Context&)>>& commands() {
  static const std::map<std::string, std::function<Result(Context&)>> table{
      {"enumerate", cmd_enumerate},     {"build-moduli", cmd_build_moduli}, {"weights", cmd_weights},
      {"equivariant", cmd_equivariant}, {"st-fibration", cmd_st_fibration}, {"subdivide", cmd_subdivide},
      {"pushforward", cmd_pushforward}, {"cycle-eq", cmd_cycle_eq},         {"clutch", cmd_clutch},
      {"forget", cmd_forget},           {"verify", cmd_verify},
  };
  return table;
}

std::string resolve(const std::string& base, const std::string& path) {
  if (base.empty() || path.empty() || std::filesystem::path(path).is_absolute()) return path;
  return (std::filesystem::path(base) / path).string();
}

}  // namespace

Request request_from_manifest(const Json& m, const std::string& base_dir) {
  auto fail = [](const std::string& where, const std::string& what) {
    throw Error(ErrorCode::SchemaError, where + ": " + what);
  };
  if (!m.is_object()) fail("/", "expected an object");
  Request r;
  if (!m.contains("command") || !m["command"].is_string()) fail("/command", "expected a string");
  r.command = m["command"].get<std::string>();
  if (m.contains("inputs")) {
    if (!m["inputs"].is_object()) fail("/inputs", "expected an object");
    for (auto it = m["inputs"].begin(); it != m["inputs"].end(); ++it) {
      if (!it.value().is_string()) fail("/inputs/" + it.key(), "expected a path");
      r.inputs[it.key()] = resolve(base_dir, it.value().get<std::string>());
    }
  }
  if (m.contains("parameters")) {
    if (!m["parameters"].is_object()) fail("/parameters", "expected an object");
    r.parameters = m["parameters"];
  }
  if (m.contains("output")) {
    if (!m["output"].is_string()) fail("/output", "expected a path");
    r.output = resolve(base_dir, m["output"].get<std::string>());
  }
  if (m.contains("seed")) {
    if (!m["seed"].is_number_integer() || m["seed"].get<long long>() < 0) fail("/seed", "expected a non-negative integer");
    r.seed = m["seed"].get<std::uint64_t>();
  }
  return r;
}

Outcome run(const Request& request) {
  Context ctx(request);
  Outcome out;
  Json report{{"command", request.command}, {"parameters", request.parameters}, {"seed", request.seed}};
  Result result;
  std::optional<Json> error;
  std::string what = "report";
  try {
    what = ctx.string_or("emit", "report");
    auto it = commands().find(request.command);
    if (it == commands().end()) throw InputError("unknown command \"" + request.command + "\"");
    result = it->second(ctx);
    out.exit_code = result.ok ? kOk : kValidationFailure;
  } catch (const InputError& e) {
    error = Json{{"code", "InputError"}, {"message", e.what()}};
    out.exit_code = kInputError;
  } catch (const Error& e) {
    error = Json{{"code", error_code_name(e.code())}, {"message", e.what()}};
    const bool input = e.code() == ErrorCode::ParseError || e.code() == ErrorCode::SchemaError;
    out.exit_code = input ? kInputError : kValidationFailure;
  } catch (const std::exception& e) {
    error = Json{{"code", "Internal"}, {"message", e.what()}};
    out.exit_code = kValidationFailure;
  }
  report["inputs"] = ctx.inputs();
  if (error) {
    report["verdict"] = "error";
    report["error"] = *error;
  } else {
    report["verdict"] = result.ok ? "ok" : "failed";
    report["result"] = result.body;
  }
  out.report = report;
  out.output = report;
  if (!error && what != "report") {
    auto doc = result.documents.find(what);
    if (doc == result.documents.end()) {
      out.report["verdict"] = "error";
      out.report["error"] = Json{{"code", "InputError"}, {"message", "command has no document \"" + what + "\""}};
      out.output = out.report;
      out.exit_code = kInputError;
    } else {
      out.output = doc->second;
    }
  }
  return out;
}

int emit(const Request& request, const Outcome& outcome) {
  const std::string text = dump(outcome.output);
  if (request.output.empty()) {
    std::cout << text;
    return outcome.exit_code;
  }
  std::ofstream f(request.output, std::ios::binary);
  if (!f) {
    std::cerr << "cannot write " << request.output << "\n";
    return kInputError;
  }
  f << text;
  if (outcome.exit_code != kOk && outcome.report.contains("error"))
    std::cerr << outcome.report["error"]["message"].get<std::string>() << "\n";
  return outcome.exit_code;
}

}  // namespace tropocone
