#pragma once

// Built-in uncolorable direction sets and direction-set files.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "kscolor/coloring_solver.hpp"
#include "kscolor/geometry.hpp"

namespace kscolor {

struct CatalogEntry {
  std::string name;
  std::string citation;
  DirectionSet directions;
  Verdict expected_verdict = Verdict::Uncolorable;
};

// "peres33", "ck31", "bub33".
std::vector<std::string> builtin_names();

// $KSCOLOR_CATALOG_DIR if set, otherwise the directory configured at build time.
std::filesystem::path catalog_dir();

// Throws Error listing the available names for an unknown name.
CatalogEntry builtin(std::string_view name);

struct LoadResult {
  DirectionSet set;
  std::vector<std::string> warnings;
};

// Syntax and coordinate errors are reported as ParseError with line/column.
LoadResult load(const std::filesystem::path& path);
void save(const DirectionSet& ds, const std::filesystem::path& path);

// A builtin name, or else a path to a direction-set file.
DirectionSet resolve_set(std::string_view name_or_path);

}  // namespace kscolor
