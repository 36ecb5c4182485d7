#include "kscolor/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "kscolor/error.hpp"
#include "kscolor/serialization.hpp"

#ifndef KSCOLOR_DEFAULT_CATALOG_DIR
#define KSCOLOR_DEFAULT_CATALOG_DIR "catalogs"
#endif

namespace kscolor {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 1-based line/column of the first quoted occurrence of literal.
std::pair<std::size_t, std::size_t> locate(const std::string& text, const std::string& literal) {
  const std::size_t at = text.find("\"" + literal + "\"");
  if (at == std::string::npos) return {0, 0};
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i <= at; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

std::vector<std::string> builtin_names() { return {"peres33", "ck31", "bub33"}; }

std::filesystem::path catalog_dir() {
  if (const char* env = std::getenv("KSCOLOR_CATALOG_DIR"); env && *env) return env;
  return KSCOLOR_DEFAULT_CATALOG_DIR;
}

CatalogEntry builtin(std::string_view name) {
  const auto names = builtin_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    throw Error("unknown catalog \"" + std::string(name) + "\"; available: " + list);
  }
  const auto path = catalog_dir() / (std::string(name) + ".json");
  const std::string text = read_file(path);
  const Json j = parse_json_text(text);

  CatalogEntry entry;
  entry.name = j.value("name", std::string(name));
  entry.citation = j.value("citation", std::string{});
  entry.expected_verdict = j.value("expected_verdict", std::string("UNCOLORABLE")) == "COLORABLE"
                               ? Verdict::Colorable
                               : Verdict::Uncolorable;
  entry.directions = direction_set_from_json(j);
  return entry;
}

LoadResult load(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const Json j = parse_json_text(text);
  LoadResult result;
  try {
    result.set = direction_set_from_json(j, &result.warnings);
  } catch (const CoordinateError& e) {
    auto [line, column] = locate(text, e.literal());
    throw ParseError(std::string(e.what()) + " in " + path.string(), line, column);
  }
  return result;
}

void save(const DirectionSet& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << to_json(ds).dump(2) << "\n";
}

DirectionSet resolve_set(std::string_view name_or_path) {
  const auto names = builtin_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end()) {
    return builtin(name_or_path).directions;
  }
  const std::filesystem::path path(name_or_path);
  if (!std::filesystem::exists(path)) {
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    throw Error("\"" + std::string(name_or_path) +
                "\" is neither a catalog name nor an existing file; catalogs: " + list);
  }
  return load(path).set;
}

}  // namespace kscolor
