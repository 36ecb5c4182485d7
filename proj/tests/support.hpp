#pragma once

// Independent oracles and generators shared by the test binaries. Nothing
// here goes through the fast paths it is used to check.

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kscolor/coloring_solver.hpp"
#include "kscolor/exact_math.hpp"
#include "kscolor/geometry.hpp"

namespace kscolor::testing {

inline ExactVec3 ivec(long x, long y, long z) {
  return ExactVec3(ExactScalar(x), ExactScalar(y), ExactScalar(z));
}

inline ProjectivePoint ipt(long x, long y, long z) { return ProjectivePoint(ivec(x, y, z)); }

inline DirectionSet axes() { return DirectionSet::build({ipt(1, 0, 0), ipt(0, 1, 0), ipt(0, 0, 1)}, "axes"); }

// Largest-magnitude eigenvalue of P_p - P_q, from floating unit vectors.
inline double eigen_projector_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
  auto proj = [](const ProjectivePoint& a) {
    const auto d = a.rep().to_double();
    Eigen::Vector3d v(d[0], d[1], d[2]);
    v.normalize();
    return Eigen::Matrix3d(v * v.transpose());
  };
  const Eigen::Matrix3d diff = proj(p) - proj(q);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(diff, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

// Every index triple whose points are pairwise orthogonal, via exact dots
// on the raw representatives.
inline std::vector<Triangle> brute_force_frames(const DirectionSet& ds) {
  std::vector<Triangle> out;
  const auto n = ds.size();
  auto orth = [&](std::size_t a, std::size_t b) {
    return dot(ds.point(a).rep(), ds.point(b).rep()).is_zero();
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (orth(i, j))
        for (std::size_t k = j + 1; k < n; ++k)
          if (orth(i, k) && orth(j, k)) out.push_back({i, j, k});
  return out;
}

inline std::vector<Edge> brute_force_edges(const DirectionSet& ds) {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (std::size_t j = i + 1; j < ds.size(); ++j)
      if (dot(ds.point(i).rep(), ds.point(j).rep()).is_zero()) out.push_back({i, j});
  return out;
}

// Counts the colorings with a plain loop over all 2^n assignments.
inline std::uint64_t mask_count_colorings(const DirectionSet& ds) {
  const auto n = ds.size();
  std::uint64_t count = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    auto bit = [&](std::size_t i) { return static_cast<int>((m >> i) & 1U); };
    auto frame_ok = [&](const Triangle& t) { return bit(t[0]) + bit(t[1]) + bit(t[2]) == 2; };
    auto edge_ok = [&](const Edge& e) { return bit(e[0]) + bit(e[1]) >= 1; };
    if (std::all_of(ds.frames().begin(), ds.frames().end(), frame_ok) &&
        std::all_of(ds.edges().begin(), ds.edges().end(), edge_ok)) {
      ++count;
    }
  }
  return count;
}

struct Cnf {
  int variables = 0;
  std::vector<std::vector<int>> clauses;
};

inline Cnf parse_dimacs(const std::string& text) {
  Cnf cnf;
  std::istringstream in(text);
  std::string line;
  int declared = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, kind;
      ls >> p >> kind >> cnf.variables >> declared;
      continue;
    }
    std::vector<int> clause;
    int lit;
    while (ls >> lit && lit != 0) clause.push_back(lit);
    cnf.clauses.push_back(clause);
  }
  if (declared >= 0 && declared != static_cast<int>(cnf.clauses.size())) cnf.variables = -1;
  return cnf;
}

inline std::uint64_t count_models(const Cnf& cnf) {
  std::uint64_t count = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << cnf.variables); ++m) {
    bool sat = true;
    for (const auto& clause : cnf.clauses) {
      bool any = false;
      for (int lit : clause) {
        const bool value = (m >> (std::abs(lit) - 1)) & 1U;
        if ((lit > 0) == value) {
          any = true;
          break;
        }
      }
      if (!any) {
        sat = false;
        break;
      }
    }
    if (sat) ++count;
  }
  return count;
}

// The 49 lines with coordinates in {0, +-1, +-2}; rich in orthogonal pairs.
inline std::vector<ProjectivePoint> small_grid() {
  std::set<ProjectivePoint> seen;
  std::vector<ProjectivePoint> out;
  for (long x = -2; x <= 2; ++x)
    for (long y = -2; y <= 2; ++y)
      for (long z = -2; z <= 2; ++z) {
        if (x == 0 && y == 0 && z == 0) continue;
        ProjectivePoint p = ipt(x, y, z);
        if (seen.insert(p).second) out.push_back(p);
      }
  return out;
}

inline DirectionSet random_grid_subset(std::mt19937_64& rng, std::size_t max_points) {
  auto grid = small_grid();
  std::shuffle(grid.begin(), grid.end(), rng);
  std::uniform_int_distribution<std::size_t> size(0, max_points);
  grid.erase(grid.begin() + static_cast<std::ptrdiff_t>(size(rng)), grid.end());
  return DirectionSet::build(std::move(grid), "random");
}

// A few whole frames of the grid plus some loose points, so that frames
// (often sharing points) are guaranteed.
inline DirectionSet random_framed_subset(std::mt19937_64& rng, std::size_t frames, std::size_t loose) {
  const DirectionSet grid = DirectionSet::build(small_grid(), "grid");
  std::uniform_int_distribution<std::size_t> frame_pick(0, grid.frames().size() - 1);
  std::uniform_int_distribution<std::size_t> point_pick(0, grid.size() - 1);
  std::set<std::size_t> chosen;
  const std::size_t first = frame_pick(rng);
  for (std::size_t k = 0; k < frames; ++k) {
    // Prefer frames touching the first one so that contexts overlap.
    std::size_t f = frame_pick(rng);
    for (int tries = 0; tries < 20 && k > 0; ++tries, f = frame_pick(rng)) {
      const auto& a = grid.frames()[first];
      const auto& b = grid.frames()[f];
      if (std::find_first_of(a.begin(), a.end(), b.begin(), b.end()) != a.end()) break;
    }
    for (std::size_t i : grid.frames()[k == 0 ? first : f]) chosen.insert(i);
  }
  for (std::size_t k = 0; k < loose; ++k) chosen.insert(point_pick(rng));
  std::vector<ProjectivePoint> pts;
  for (std::size_t i : chosen) pts.push_back(grid.point(i));
  std::shuffle(pts.begin(), pts.end(), rng);
  return DirectionSet::build(std::move(pts), "framed");
}

inline Rational random_rational(std::mt19937_64& rng, long range = 50) {
  std::uniform_int_distribution<long> num(-range, range), den(1, range);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline ExactScalar random_scalar(std::mt19937_64& rng, bool with_sqrt2 = true) {
  return ExactScalar(random_rational(rng), with_sqrt2 ? random_rational(rng) : Rational(0));
}

inline ExactVec3 random_vec(std::mt19937_64& rng, bool with_sqrt2 = true) {
  return ExactVec3(random_scalar(rng, with_sqrt2), random_scalar(rng, with_sqrt2),
                   random_scalar(rng, with_sqrt2));
}

}  // namespace kscolor::testing
