#pragma once

#include <string>

#include "json.hpp"
#include "tropocone/complex.hpp"
#include "tropocone/graphs.hpp"
#include "tropocone/linalg.hpp"
#include "tropocone/poic.hpp"
#include "tropocone/space.hpp"
#include "tropocone/subdivide.hpp"
#include "tropocone/weights.hpp"

namespace tropocone {

using Json = nlohmann::ordered_json;

// Interchange format.  Integers are decimal strings; matrices are
// {"rows", "cols", "entries"} with entries in row-major order.  Every document
// object carries a "type" field ("poic", "complex", "space", "weight",
// "subdivision", "morphism", "cycle", "graph"), optional on input.  The
// serializers produce the canonical form: serialize(parse(doc)) == doc for
// documents they wrote.  Parsers throw SchemaError naming the JSON pointer of
// the offending value.

Json to_json(const Int& x);
Json to_json(const Vec& v);
Json to_json(const IntMatrix& m);
Int int_from_json(const Json& j, const std::string& where = "");
Vec vec_from_json(const Json& j, const std::string& where = "");
IntMatrix matrix_from_json(const Json& j, const std::string& where = "");

// {"rank", "constraints": [{"normal", "strict"}]}, plus "retained" (tight
// closure-facet sets of the retained faces) when closed and strict
// half-spaces do not describe the cone.
Json to_json(const Poic& p);
Poic poic_from_json(const Json& j, const std::string& where = "");

// {"cones", "labels", "relations": [{"lower", "upper", "matrix"}]} and,
// for linear complexes, "linear": {"target_rank", "maps"}.
Json to_json(const PoicComplex& c);
Json to_json(const LinearComplex& c);
PoicComplex complex_from_json(const Json& j, const std::string& where = "");
// Throws SchemaError when the document has no linear structure.
LinearComplex linear_complex_from_json(const Json& j, const std::string& where = "");
bool has_linear_structure(const Json& j);

// {"objects", "labels", "morphisms": [{"source", "target", "matrix"}]}.
Json to_json(const PoicSpace& x);
PoicSpace space_from_json(const Json& j, const std::string& where = "");

// {"dim", "values": [{"cone", "value"}]}, zero values omitted.
Json to_json(const Weight& w);
Weight weight_from_json(const Json& j, const std::string& where = "");

// {"source", "target", "cone_map", "matrices"}.
Json to_json(const Subdivision& s);
Subdivision subdivision_from_json(const Json& j, const std::string& where = "");

// {"cone_map", "matrices"}.
Json to_json(const ComplexMorphism& m);
ComplexMorphism morphism_from_json(const Json& j, const std::string& where = "");

// {"subdivision", "weight"}.
Json to_json(const Cycle& c);
Cycle cycle_from_json(const Json& j, const std::string& where = "");

// {"roots", "involution", "marking": {label: flag}}.
Json to_json(const DiscreteGraph& g);
DiscreteGraph graph_from_json(const Json& j, const std::string& where = "");

// Throws ParseError with the byte offset of the syntax error.
Json parse_json(const std::string& text, const std::string& source = "<input>");
// Throws ParseError when the file cannot be read or parsed.
Json read_json_file(const std::string& path);
std::string read_file(const std::string& path);
// Two-space indented dump followed by a newline.
std::string dump(const Json& j);

// FNV-1a 64-bit digest of a byte string, as 16 hex digits.
std::string digest(const std::string& bytes);

}  // namespace tropocone
