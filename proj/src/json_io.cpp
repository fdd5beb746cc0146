#include "ortho/json_io.hpp"

#include <fstream>
#include <sstream>

#include "ortho/errors.hpp"

namespace ortho::json {

json to_json(const Rational& r) { return r.str(); }

json to_json(const Vector& v) {
  json a = json::array();
  for (const auto& e : v.entries()) a.push_back(to_json(e));
  return a;
}

json to_json(const Frame& f) {
  json a = json::array();
  for (const auto& v : f.vectors()) a.push_back(to_json(v));
  return a;
}

json to_json(const Matrix& m) {
  json a = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    a.push_back(std::move(row));
  }
  return a;
}

json to_json(const GramInnerProduct& g) { return to_json(g.matrix()); }

static json values_json(const CoordinateVector& values) {
  json a = json::array();
  for (const auto& v : values) a.push_back(to_json(v));
  return a;
}

json to_json(const RelationPoint& p) {
  return json{{"frame", to_json(p.frame())}, {"point", to_json(p.point())}, {"values", values_json(p.values())}};
}

json to_json(const Relation& rel) {
  json a = json::array();
  for (const auto& p : rel) a.push_back(to_json(p));
  return a;
}

json to_json(const ProjectionKey& k) {
  return json{{"index", k.index + 1}, {"vector", to_json(k.vector)}, {"point", to_json(k.point)}};
}

json to_json(const FactorTable& t) {
  json entries = json::array();
  for (const auto& [key, value] : t.entries) {
    entries.push_back(json{{"vector", to_json(key.vector)}, {"point", to_json(key.point)}, {"value", to_json(value)}});
  }
  return json{{"index", t.index + 1}, {"entries", std::move(entries)}};
}

json to_json(const Counterexample& c) {
  return json{{"index", c.index + 1},
              {"p", to_json(c.first)},
              {"q", to_json(c.second)},
              {"values", json::array({to_json(c.first_value()), to_json(c.second_value())})}};
}

json to_json(const FactorizationOutcome& o) {
  if (const auto* c = std::get_if<Counterexample>(&o)) return json{{"counterexample", to_json(*c)}};
  json tables = json::array();
  for (const auto& t : std::get<FactorTables>(o).tables) tables.push_back(to_json(t));
  return json{{"tables", std::move(tables)}};
}

json to_json(const MaximalityReport& r) {
  return json{{"candidate", to_json(r.candidate)},
              {"witness", to_json(r.witness)},
              {"x", to_json(r.collision_point)},
              {"index", r.index + 1},
              {"value_candidate", to_json(r.value_candidate)},
              {"value_witness", to_json(r.value_witness)},
              {"verdict", to_string(r.verdict)}};
}

json to_json(const MaximalitySummary& s) {
  return json{{"total", s.total},
              {"orthogonal_accepted", s.orthogonal_accepted},
              {"nonorthogonal_rejected", s.nonorthogonal_rejected}};
}

// ---- parsing -------------------------------------------------------------------

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where.empty() ? "/" : where, what);
}

const json& require_array(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, std::string("expected an array, found ") + j.type_name());
  return j;
}

// Re-raises library errors (shape, independence, span) with the location.
template <typename F>
auto located(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    if (!e.location().empty()) throw;
    fail(where, e.detail());
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

}  // namespace

Rational rational_from(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    return located(where, [&] { return Rational::parse(j.get<std::string>()); });
  }
  fail(where, std::string("expected a rational string \"p/q\" or an integer, found ") + j.type_name());
}

Vector vector_from(const json& j, const std::string& where) {
  require_array(j, where);
  if (j.empty()) fail(where, "empty vector");
  std::vector<Rational> entries;
  entries.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) entries.push_back(rational_from(j[i], where + "/" + std::to_string(i)));
  return Vector(std::move(entries));
}

Frame frame_from(const json& j, const std::string& where) {
  require_array(j, where);
  std::vector<Vector> vectors;
  for (std::size_t i = 0; i < j.size(); ++i) vectors.push_back(vector_from(j[i], where + "/" + std::to_string(i)));
  return located(where, [&] { return Frame(std::move(vectors)); });
}

Matrix matrix_from(const json& j, const std::string& where) {
  require_array(j, where);
  const std::size_t rows = j.size();
  if (rows == 0) fail(where, "empty matrix");
  const std::size_t cols = require_array(j[0], where + "/0").size();
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string row_at = where + "/" + std::to_string(r);
    if (require_array(j[r], row_at).size() != cols) fail(row_at, "ragged matrix row");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational_from(j[r][c], row_at + "/" + std::to_string(c));
  }
  return m;
}

GramInnerProduct gram_from(const json& j, const std::string& where) {
  // Validation errors (symmetry, definiteness) keep their own type so the
  // failing minor stays available to callers.
  return GramInnerProduct::validate(matrix_from(j, where));
}

RelationPoint relation_point_from(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, std::string("expected an object, found ") + j.type_name());
  if (!j.contains("frame")) fail(where, "missing \"frame\"");
  if (!j.contains("point")) fail(where, "missing \"point\"");
  Frame frame = frame_from(j["frame"], where + "/frame");
  Vector point = vector_from(j["point"], where + "/point");
  if (!j.contains("values")) {
    return located(where + "/point", [&] { return RelationPoint::canonical(std::move(frame), std::move(point)); });
  }
  const json& jv = require_array(j["values"], where + "/values");
  CoordinateVector values;
  for (std::size_t i = 0; i < jv.size(); ++i) values.push_back(rational_from(jv[i], where + "/values/" + std::to_string(i)));
  return located(where, [&] { return RelationPoint::with_values(std::move(frame), std::move(point), std::move(values)); });
}

Relation relation_from(const json& j, const std::string& where) {
  require_array(j, where);
  Relation rel;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "/" + std::to_string(i);
    RelationPoint p = relation_point_from(j[i], at);
    located(at, [&] { return rel.add(std::move(p)); });
  }
  return rel;
}

std::vector<Frame> frames_from(const json& j, const std::string& where) {
  require_array(j, where);
  std::vector<Frame> frames;
  for (std::size_t i = 0; i < j.size(); ++i) frames.push_back(frame_from(j[i], where + "/" + std::to_string(i)));
  return frames;
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_text(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + " " + e.location(), e.detail());
  }
}

}  // namespace ortho::json
