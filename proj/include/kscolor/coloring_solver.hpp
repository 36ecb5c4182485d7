#pragma once

// Colorings of a DirectionSet: {0,1} values with every frame summing to 2
// and every orthogonal pair summing to at least 1. Antipodal symmetry is
// implicit because a ProjectivePoint already identifies v with -v.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kscolor/geometry.hpp"

namespace kscolor {

struct Coloring {
  static constexpr std::int8_t kUnassigned = -1;

  // One entry per point of the set: 0, 1, or kUnassigned.
  std::vector<std::int8_t> assignment;

  bool is_total() const;
  friend bool operator==(const Coloring&, const Coloring&) = default;
};

// An element of {(1,1,0), (1,0,1), (0,1,1)}, slots in the frame's stored order.
using Outcome = std::array<std::uint8_t, 3>;

bool is_outcome(const Outcome& o);

// One outcome per frame of a DirectionSet, indexed like ds.frames().
struct FrameFunction {
  std::vector<Outcome> values;
  friend bool operator==(const FrameFunction&, const FrameFunction&) = default;
};

enum class Verdict { Colorable, Uncolorable };

std::string to_string(Verdict v);

struct SolveStats {
  std::uint64_t nodes = 0;
  std::uint64_t propagations = 0;
  double wall_seconds = 0.0;
};

struct SolveReport {
  Verdict verdict = Verdict::Uncolorable;
  std::optional<Coloring> witness;
  SolveStats stats;
};

// Complete DFS with unit propagation. Branches on the unassigned point of
// highest constraint degree (frames + orthogonal pairs, ties to lower index),
// trying 1 before 0. Deterministic.
SolveReport solve(const DirectionSet& ds);

struct Violation {
  enum class Kind { Frame, Edge };
  Kind kind;
  std::size_t index;                 // into ds.frames() or ds.edges()
  std::vector<std::size_t> points;
  std::vector<int> values;
  int sum;
};

std::string to_string(const Violation& v);

// Empty iff c is a coloring. Throws Error if c is not total on ds.
std::vector<Violation> verify_coloring(const DirectionSet& ds, const Coloring& c);

// Exhaustive count, independent of solve(). Throws Error above 30 points.
std::uint64_t count_colorings(const DirectionSet& ds);

// Reads off the per-frame triples. Throws Error if c is not a valid coloring.
FrameFunction coloring_to_frame_function(const DirectionSet& ds, const Coloring& c);

// Values outside T, wrong sizes, and frames sharing a point with different
// values. Empty iff lambda is a frame function on ds.
std::vector<std::string> verify_frame_function(const DirectionSet& ds, const FrameFunction& lambda);

// Points covered by frames take the frame value; the rest get 1.
// Throws Error naming the conflicting frames if lambda is not noncontextual.
Coloring frame_function_to_coloring(const DirectionSet& ds, const FrameFunction& lambda);

// DIMACS CNF, one variable per point (variable = index + 1):
// (-i -j -k) per frame and (i j) per orthogonal pair.
std::string export_cnf(const DirectionSet& ds);

}  // namespace kscolor
