#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tropocone/commands.hpp"
#include "tropocone/error.hpp"

using namespace tropocone;

namespace {

// Options of one subcommand, copied into the request after parsing.
struct Options {
  std::map<std::string, std::string> inputs;
  std::map<std::string, std::size_t> counts;
  std::map<std::string, std::string> strings;
  std::map<std::string, std::vector<std::string>> lists;
  std::vector<std::string> ray;
  bool no_push = false;
};

void add_input(CLI::App* app, Options& o, const std::string& name, const std::string& help, bool required) {
  auto* opt = app->add_option("--" + name, o.inputs[name], help);
  if (required) opt->required();
}

void add_graph_params(CLI::App* app, Options& o, const std::string& prefix = "") {
  const std::string g = prefix.empty() ? "genus" : prefix + "_genus";
  const std::string m = prefix.empty() ? "marks" : prefix + "_marks";
  std::string flag_g = "--" + g, flag_m = "--" + m;
  std::replace(flag_g.begin(), flag_g.end(), '_', '-');
  std::replace(flag_m.begin(), flag_m.end(), '_', '-');
  app->add_option(flag_g, o.counts[g], "genus")->default_val(0);
  app->add_option(flag_m, o.lists[m], "marked leg labels, comma separated")->delimiter(',');
}

Request to_request(const std::string& command, const Options& o, const std::string& output) {
  Request r;
  r.command = command;
  r.output = output;
  for (const auto& [k, v] : o.inputs)
    if (!v.empty()) r.inputs[k] = v;
  for (const auto& [k, v] : o.counts) r.parameters[k] = v;
  for (const auto& [k, v] : o.strings)
    if (!v.empty()) r.parameters[k] = v;
  for (const auto& [k, v] : o.lists) r.parameters[k] = v;
  if (!o.ray.empty()) r.parameters["ray"] = o.ray;
  if (command == "clutch") r.parameters["push"] = !o.no_push;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* t = std::getenv("TROPOCONE_THREADS")) {
    const std::string s = t;
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || std::stoul(s) == 0) {
      std::cerr << "TROPOCONE_THREADS must be a positive integer\n";
      return kInputError;
    }
  }

  CLI::App app{"Exact tropical intersection theory on partially open cone complexes"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output;
  app.add_option("-o,--output", output, "write the result here instead of stdout");

  std::map<std::string, Options> opts;
  auto sub = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--emit", opts[name].strings["emit"], "document to write instead of the report");
    return s;
  };

  CLI::App* run_cmd = app.add_subcommand("run", "execute a JSON manifest");
  std::string manifest;
  run_cmd->add_option("manifest", manifest, "manifest file")->required();

  add_graph_params(sub("enumerate", "list the graph category G_{g,A} up to isomorphism"), opts["enumerate"]);
  add_graph_params(sub("build-moduli", "build the moduli poic-space M_{g,A}"), opts["build-moduli"]);

  {
    CLI::App* s = sub("weights", "basis of the Minkowski weights of a linear complex");
    add_input(s, opts["weights"], "complex", "linear complex document", true);
    s->add_option("--k", opts["weights"].counts["k"], "dimension")->required();
  }
  {
    CLI::App* s = sub("equivariant", "equivariant Minkowski weights of the spanning-tree fibration");
    add_graph_params(s, opts["equivariant"]);
    s->add_option("--k", opts["equivariant"].strings["k"], "dimension (default: top)");
  }
  add_graph_params(sub("st-fibration", "validate the spanning-tree fibration st_{g,A}"), opts["st-fibration"]);
  {
    CLI::App* s = sub("subdivide", "subdivide a complex");
    Options& o = opts["subdivide"];
    add_input(s, o, "complex", "complex document", true);
    s->add_option("--mode", o.strings["mode"], "identity, barycentric or stellar")->default_val("barycentric");
    s->add_option("--cone", o.strings["cone"], "stellar: cone to subdivide");
    s->add_option("--ray", o.ray, "stellar: ray in the coordinates of the cone, comma separated")->delimiter(',');
  }
  {
    CLI::App* s = sub("pushforward", "push a weight forward along a morphism of complexes");
    Options& o = opts["pushforward"];
    add_input(s, o, "source", "source complex", true);
    add_input(s, o, "target", "target complex (linear to check balancing)", true);
    add_input(s, o, "morphism", "morphism document", true);
    add_input(s, o, "weight", "weight on the source", true);
    add_input(s, o, "fine", "fine subdivision of the target (default: computed)", false);
  }
  {
    CLI::App* s = sub("cycle-eq", "compare two cycles on a common refinement");
    add_input(s, opts["cycle-eq"], "a", "first cycle", true);
    add_input(s, opts["cycle-eq"], "b", "second cycle", true);
  }
  {
    CLI::App* s = sub("clutch", "clutching morphism st_{g,A} x st_{h,B} -> st_{g+h, A delta B}");
    add_graph_params(s, opts["clutch"], "left");
    add_graph_params(s, opts["clutch"], "right");
    s->add_flag("--no-push", opts["clutch"].no_push, "skip pushing the fundamental weight forward");
  }
  {
    CLI::App* s = sub("forget", "forgetful morphism st_{g,A} -> st_{g,A-a}");
    add_graph_params(s, opts["forget"]);
    s->add_option("--mark", opts["forget"].strings["mark"], "leg to forget")->required();
  }
  {
    CLI::App* s = sub("verify", "validate documents");
    Options& o = opts["verify"];
    add_input(s, o, "subdivision", "subdivision: check the three axioms", false);
    add_input(s, o, "complex", "complex: check the axioms (with --weight: balancing)", false);
    add_input(s, o, "weight", "weight on the complex", false);
    add_input(s, o, "space", "poic-space: check the axioms", false);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  Request request;
  if (run_cmd->parsed()) {
    try {
      request = request_from_manifest(read_json_file(manifest),
                                      std::filesystem::path(manifest).parent_path().string());
    } catch (const Error& e) {
      std::cerr << e.what() << "\n";
      return kInputError;
    }
    if (!output.empty()) request.output = output;
  } else {
    for (CLI::App* s : app.get_subcommands()) request = to_request(s->get_name(), opts[s->get_name()], output);
  }
  return emit(request, run(request));
}
