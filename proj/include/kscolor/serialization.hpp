#pragma once

// JSON forms shared by the catalog files, the CLI, and the tests.
//
// Direction set: {"name": s, "field": "rational"|"sqrt2", "directions": [[s,s,s], ...]}
// Coloring:      {"set": s, "assignment": [0|1, ...]}

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kscolor/coloring_solver.hpp"
#include "kscolor/error.hpp"
#include "kscolor/geometry.hpp"

namespace kscolor {

using Json = nlohmann::ordered_json;

// A coordinate that failed to parse; carries the literal so file loaders
// can locate it.
class CoordinateError : public Error {
 public:
  CoordinateError(const std::string& what, std::string literal)
      : Error(what), literal_(std::move(literal)) {}
  const std::string& literal() const { return literal_; }

 private:
  std::string literal_;
};

Json to_json(const ProjectivePoint& p);
Json to_json(const DirectionSet& ds);

// Parses JSON text; syntax errors become ParseError with line and column.
Json parse_json_text(std::string_view text);

// Canonicalizes every direction; a warning is appended for each direction
// whose written form was not already canonical. Duplicates throw Error.
DirectionSet direction_set_from_json(const Json& j, std::vector<std::string>* warnings = nullptr);

Json coloring_to_json(const Coloring& c, const std::string& set_name);
// Throws Error unless the assignment has expected_size entries of 0/1.
Coloring coloring_from_json(const Json& j, std::size_t expected_size);

}  // namespace kscolor
