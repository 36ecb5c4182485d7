#pragma once

// Rational directions on the sphere, exact rational rotations, and
// per-frame perturbations that make a frame set totally incompatible.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "kscolor/error.hpp"
#include "kscolor/geometry.hpp"
#include "kscolor/serialization.hpp"

namespace kscolor {

// x^2 + y^2 + z^2 = n^2, gcd(x,y,z) = 1, first nonzero of (x,y,z) positive.
struct PythagoreanQuadruple {
  std::int64_t x = 0, y = 0, z = 0, n = 1;

  ProjectivePoint direction() const;
  friend auto operator<=>(const PythagoreanQuadruple& a, const PythagoreanQuadruple& b) {
    return std::tie(a.n, a.x, a.y, a.z) <=> std::tie(b.n, b.x, b.y, b.z);
  }
  friend bool operator==(const PythagoreanQuadruple&, const PythagoreanQuadruple&) = default;
};

// Every primitive quadruple with n <= max_n, one per line, sorted by (n, x, y, z).
std::vector<PythagoreanQuadruple> enumerate_quadruples(std::int64_t max_n);

// All rational unit directions with denominator <= max_n and their frames.
DirectionSet rational_frames(std::int64_t max_n);

using Quaternion = std::array<std::int64_t, 4>;  // (w, x, y, z)
using RationalMatrix = std::array<std::array<Rational, 3>, 3>;

class RationalRotation {
 public:
  // Throws Error for the zero quaternion.
  explicit RationalRotation(const Quaternion& q);

  const Quaternion& quaternion() const { return q_; }
  const RationalMatrix& matrix() const { return m_; }

  ExactVec3 apply(const ExactVec3& v) const;
  ProjectivePoint apply(const ProjectivePoint& p) const;

  // Exact cos and sin^2 of the rotation angle.
  Rational cos_angle() const;
  Rational sin2_angle() const;
  double sin_angle() const;

 private:
  Quaternion q_;
  RationalMatrix m_;
};

RationalRotation make_rotation(const Quaternion& q);

// M^T M == I, exactly.
bool is_orthogonal(const RationalMatrix& m);
Rational determinant(const RationalMatrix& m);

struct PerturbationPlan {
  DirectionSet source;
  std::vector<RationalRotation> rotations;  // one per source frame
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  ProjectorNorm norm = ProjectorNorm::Operator;
  int attempts = 0;
  // Frame i of the result is points 3i, 3i+1, 3i+2: the images of source
  // frame i in its stored order.
  DirectionSet result;
};

// Rotates each source frame independently by a small random rational
// rotation whose angle has sine below epsilon, re-drawing until the union
// is totally incompatible with no coinciding points.
//
// Requires at least one frame and epsilon below half the smallest distance
// between distinct source points. Throws Error if no draw succeeds.
PerturbationPlan perturb_frames(const DirectionSet& ds, double epsilon, std::uint64_t seed,
                                ProjectorNorm norm = ProjectorNorm::Operator);

// Rebuilds the result of a plan from its source and quaternions.
// Throws Error if the rotated points collide.
DirectionSet apply_rotations(const DirectionSet& source, const std::vector<RationalRotation>& rotations,
                             std::string name = {});

// Every point lies in at most one frame.
bool is_totally_incompatible(const DirectionSet& ds);

// Nearest-by-denominator rational direction within epsilon of the target
// line. Scans n = 1 .. max_n; the first n with a hit wins, ties broken by
// distance then (x, y, z).
PythagoreanQuadruple approximate_direction(const std::array<double, 3>& target, double epsilon,
                                           std::int64_t max_n = 1000,
                                           ProjectorNorm norm = ProjectorNorm::Operator);

class ApproximationError : public Error {
 public:
  ApproximationError(const std::string& what, PythagoreanQuadruple best, double best_distance)
      : Error(what), best_(best), best_distance_(best_distance) {}
  const PythagoreanQuadruple& best() const { return best_; }
  double best_distance() const { return best_distance_; }

 private:
  PythagoreanQuadruple best_;
  double best_distance_;
};

// Distance from a floating direction to a rational one.
double projector_distance(const std::array<double, 3>& target, const PythagoreanQuadruple& q,
                          ProjectorNorm norm = ProjectorNorm::Operator);

Json plan_to_json(const PerturbationPlan& plan);
// Replays the quaternions recorded in j against source.
PerturbationPlan plan_from_json(const Json& j, const DirectionSet& source);

}  // namespace kscolor
