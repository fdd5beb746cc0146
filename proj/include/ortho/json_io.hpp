#pragma once

// JSON forms shared by the library and the CLI.
//
//   rational   "p/q" string (integers and bare "p" strings are accepted on input)
//   vector     array of rationals
//   frame      array of vectors
//   gram       array of arrays of rationals
//   relation   array of {"frame", "point", "values"}; "values" is optional
//              on input and recomputed canonically when absent
//   outcome    {"tables": [...]} or {"counterexample": {...}}
//
// Functional indices are written 1-based. Canonical text is nlohmann's
// compact dump: sorted keys, no insignificant whitespace.

#include <string>
#include <string_view>

#include <json.hpp>

#include "ortho/dependence.hpp"
#include "ortho/inner_product.hpp"
#include "ortho/maximality.hpp"

namespace ortho::json {

using nlohmann::json;

json to_json(const Rational& r);
json to_json(const Vector& v);
json to_json(const Frame& f);
json to_json(const Matrix& m);
json to_json(const GramInnerProduct& g);
json to_json(const RelationPoint& p);
json to_json(const Relation& rel);
json to_json(const ProjectionKey& k);
json to_json(const FactorTable& t);
json to_json(const Counterexample& c);
json to_json(const FactorizationOutcome& o);
json to_json(const MaximalityReport& r);
json to_json(const MaximalitySummary& s);

// Parsers throw ParseError whose location is a JSON pointer into `j`
// (relative to `where`).
Rational rational_from(const json& j, const std::string& where = "");
Vector vector_from(const json& j, const std::string& where = "");
Frame frame_from(const json& j, const std::string& where = "");
Matrix matrix_from(const json& j, const std::string& where = "");
GramInnerProduct gram_from(const json& j, const std::string& where = "");
RelationPoint relation_point_from(const json& j, const std::string& where = "");
Relation relation_from(const json& j, const std::string& where = "");
std::vector<Frame> frames_from(const json& j, const std::string& where = "");

/// Parses text, mapping syntax errors to ParseError with a byte offset.
json parse_text(std::string_view text);

/// Reads and parses a file; I/O failures are reported as ParseError too.
json read_file(const std::string& path);

inline std::string canonical(const json& j) { return j.dump(); }

}  // namespace ortho::json
