#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kscolor/exact_math.hpp"

namespace kscolor {

// How the distance between two line projectors is measured. For rank-one
// projectors the Frobenius norm of the difference is sqrt2 times the
// operator norm.
enum class ProjectorNorm { Operator, Frobenius };

std::string to_string(ProjectorNorm norm);
// "operator" or "frobenius"; throws Error otherwise.
ProjectorNorm parse_norm(std::string_view text);

// A line through the origin, stored as a canonical representative:
// divide by the first nonzero coordinate, clear all denominators, then
// remove the common integer content. The first nonzero coordinate ends up
// a positive integer and every coordinate lies in Z[sqrt2].
class ProjectivePoint {
 public:
  // Throws Error for the zero vector.
  explicit ProjectivePoint(const ExactVec3& v);

  const ExactVec3& rep() const { return rep_; }
  bool is_rational() const { return rep_.is_rational(); }

  friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) {
    return a.rep_ == b.rep_;
  }
  // Lexicographic over coordinate parts. Arbitrary but total.
  friend std::strong_ordering operator<=>(const ProjectivePoint& a,
                                          const ProjectivePoint& b);

  friend ExactScalar dot(const ProjectivePoint& p, const ProjectivePoint& q);
  friend bool orthogonal(const ProjectivePoint& p, const ProjectivePoint& q);

 private:
  // Coordinates as (rat, irr) int64 pairs when they fit, for fast dots.
  using SmallRep = std::array<std::array<std::int64_t, 2>, 3>;

  ExactVec3 rep_;
  std::optional<SmallRep> small_;
};

ProjectivePoint canonicalize(const ExactVec3& v);
std::string to_string(const ProjectivePoint& p);

// Squared cosine of the angle between the lines, exactly.
ExactScalar cos2_angle(const ProjectivePoint& p, const ProjectivePoint& q);

// ||P_p - P_q||: the sine of the angle between the lines (operator norm),
// or sqrt2 times that (Frobenius). The ratio is computed exactly, so the
// result is 0 iff p == q.
double projector_distance(const ProjectivePoint& p, const ProjectivePoint& q,
                          ProjectorNorm norm = ProjectorNorm::Operator);

// Ordered triple of pairwise orthogonal, distinct lines.
class Frame {
 public:
  // Throws Error if the points are not pairwise orthogonal.
  Frame(ProjectivePoint a, ProjectivePoint b, ProjectivePoint c);

  const ProjectivePoint& operator[](std::size_t i) const { return points_[i]; }
  const std::array<ProjectivePoint, 3>& points() const { return points_; }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  std::array<ProjectivePoint, 3> points_;
};

// max_i min_j ||P_{f_i} - P_{g_j}||
double frame_distance(const Frame& f, const Frame& g,
                      ProjectorNorm norm = ProjectorNorm::Operator);

using Edge = std::array<std::size_t, 2>;
using Triangle = std::array<std::size_t, 3>;

// A finite set of lines with its exact orthogonality graph and the frames
// (triangles) in that graph. Immutable once built.
class DirectionSet {
 public:
  DirectionSet() = default;

  // Throws Error listing every duplicated line.
  static DirectionSet build(std::vector<ProjectivePoint> points, std::string name = {});

  const std::string& name() const { return name_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  std::span<const ProjectivePoint> points() const { return points_; }
  const ProjectivePoint& point(std::size_t i) const { return points_[i]; }

  // Sorted (i < j), lexicographic.
  std::span<const Edge> edges() const { return edges_; }
  // Sorted (i < j < k), lexicographic.
  std::span<const Triangle> frames() const { return frames_; }

  std::span<const std::size_t> neighbors(std::size_t i) const { return adjacency_[i]; }
  // Frame indices containing point i, ascending.
  std::span<const std::size_t> frames_of(std::size_t i) const { return incidence_[i]; }

  bool adjacent(std::size_t i, std::size_t j) const;

  // Frame f as an ordered triple in stored (sorted index) order.
  Frame frame(std::size_t f) const;
  // All six orderings of frame f.
  std::vector<Frame> frame_orderings(std::size_t f) const;

  std::optional<std::size_t> index_of(const ProjectivePoint& p) const;

  // True when every coordinate is rational.
  bool is_rational() const;

  // Copy with a different name.
  DirectionSet renamed(std::string name) const;

 private:
  std::string name_;
  std::vector<ProjectivePoint> points_;
  std::vector<Edge> edges_;
  std::vector<Triangle> frames_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::vector<std::size_t>> incidence_;
  // Indices sorted by point order, for index_of.
  std::vector<std::size_t> sorted_;
};

DirectionSet build_direction_set(std::vector<ProjectivePoint> points, std::string name = {});

// Adds, for every orthogonal pair that lies in no frame, the line
// orthogonal to both, so every pair constraint among the original points
// becomes part of a frame. Keeps the input's name and point order.
DirectionSet complete_frames(const DirectionSet& ds);

// Smallest projector distance between distinct points (infinity if < 2 points).
double min_separation(const DirectionSet& ds, ProjectorNorm norm = ProjectorNorm::Operator);

}  // namespace kscolor
