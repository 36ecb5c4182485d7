#include "kscolor/serialization.hpp"

#include "kscolor/error.hpp"

namespace kscolor {

Json to_json(const ProjectivePoint& p) {
  const ExactVec3& v = p.rep();
  return Json::array({to_string(v[0]), to_string(v[1]), to_string(v[2])});
}

Json to_json(const DirectionSet& ds) {
  Json j;
  j["name"] = ds.name();
  j["field"] = ds.is_rational() ? "rational" : "sqrt2";
  Json dirs = Json::array();
  for (const auto& p : ds.points()) dirs.push_back(to_json(p));
  j["directions"] = std::move(dirs);
  return j;
}

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(e.what(), line, column);
  }
}

namespace {

ExactScalar scalar_from_json(const Json& s, const std::string& where) {
  try {
    if (s.is_string()) return parse_scalar(s.get<std::string>());
    if (s.is_number_integer()) return ExactScalar(s.get<long>());
  } catch (const ParseError& e) {
    throw CoordinateError(where + ": " + e.what(), s.get<std::string>());
  }
  throw Error(where + ": expected a scalar string or integer");
}

}  // namespace

DirectionSet direction_set_from_json(const Json& j, std::vector<std::string>* warnings) {
  if (!j.is_object()) throw Error("direction set must be a JSON object");
  const std::string name = j.value("name", std::string{});
  if (!j.contains("directions") || !j["directions"].is_array()) {
    throw Error("direction set is missing the \"directions\" array");
  }
  std::string field;
  if (j.contains("field")) {
    field = j["field"].get<std::string>();
    if (field != "rational" && field != "sqrt2") {
      throw Error("unknown field \"" + field + "\" (expected rational or sqrt2)");
    }
  }

  std::vector<ProjectivePoint> points;
  const Json& dirs = j["directions"];
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    const std::string where = "directions[" + std::to_string(k) + "]";
    const Json& d = dirs[k];
    if (!d.is_array() || d.size() != 3) throw Error(where + ": expected three coordinates");
    ExactVec3 v(scalar_from_json(d[0], where + "[0]"), scalar_from_json(d[1], where + "[1]"),
                scalar_from_json(d[2], where + "[2]"));
    if (field == "rational" && !v.is_rational()) {
      throw Error(where + ": sqrt2 coordinate in a set declared rational");
    }
    if (v.is_zero()) throw Error(where + ": zero vector is not a direction");
    ProjectivePoint p(v);
    if (warnings && !(p.rep() == v)) {
      warnings->push_back(where + " " + to_string(v) + " canonicalized to " + to_string(p));
    }
    points.push_back(std::move(p));
  }
  return DirectionSet::build(std::move(points), name);
}

Json coloring_to_json(const Coloring& c, const std::string& set_name) {
  Json j;
  j["set"] = set_name;
  Json values = Json::array();
  for (auto v : c.assignment) values.push_back(static_cast<int>(v));
  j["assignment"] = std::move(values);
  return j;
}

Coloring coloring_from_json(const Json& j, std::size_t expected_size) {
  if (!j.is_object() || !j.contains("assignment") || !j["assignment"].is_array()) {
    throw Error("coloring JSON must contain an \"assignment\" array");
  }
  const Json& a = j["assignment"];
  if (a.size() != expected_size) {
    throw Error("coloring has " + std::to_string(a.size()) + " values, expected " +
                std::to_string(expected_size));
  }
  Coloring c;
  for (const auto& v : a) {
    if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1)) {
      throw Error("coloring values must be 0 or 1");
    }
    c.assignment.push_back(static_cast<std::int8_t>(v.get<int>()));
  }
  return c;
}

}  // namespace kscolor
