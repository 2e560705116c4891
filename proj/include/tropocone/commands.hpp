#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "tropocone/io.hpp"

namespace tropocone {

// One run of the tool: a command, named input files, JSON parameters, an
// output path (empty for stdout) and the seed recorded for randomized checks.
// A manifest is the JSON form {"command", "inputs", "parameters", "output", "seed"}.
struct Request {
  std::string command;
  std::map<std::string, std::string> inputs;
  Json parameters = Json::object();
  std::string output;
  std::uint64_t seed = 0;
};

// Relative input and output paths are resolved against base_dir.  Throws
// SchemaError.
Request request_from_manifest(const Json& manifest, const std::string& base_dir = "");

enum ExitCode { kOk = 0, kValidationFailure = 1, kInputError = 2 };

struct Outcome {
  int exit_code = kOk;
  // The report; for requests with parameter "emit" naming a document, that
  // document instead (the report is still returned in `report`).
  Json output;
  Json report;
};

// Commands: enumerate, build-moduli, weights, equivariant, st-fibration,
// subdivide, pushforward, cycle-eq, clutch, forget, verify.  Never throws:
// input errors (unknown command, unreadable or malformed documents, bad
// parameters) give kInputError, module errors and failed verdicts give
// kValidationFailure; the report then carries "error" or the failed checks.
// Reports are deterministic functions of the request and the input bytes.
Outcome run(const Request& request);

// Writes outcome.output to request.output (or stdout) and returns the exit code.
int emit(const Request& request, const Outcome& outcome);

}  // namespace tropocone
