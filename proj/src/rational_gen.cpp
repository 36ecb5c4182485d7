#include "kscolor/rational_gen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace kscolor {

namespace {

std::int64_t isqrt(std::int64_t v) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

bool canonical_sign(std::int64_t x, std::int64_t y, std::int64_t z) {
  if (x != 0) return x > 0;
  if (y != 0) return y > 0;
  return z > 0;
}

std::optional<PythagoreanQuadruple> make_quadruple(std::int64_t x, std::int64_t y, std::int64_t z,
                                                   std::int64_t n) {
  if (std::gcd(std::gcd(x, y), z) != 1) return std::nullopt;
  if (!canonical_sign(x, y, z)) {
    x = -x;
    y = -y;
    z = -z;
  }
  return PythagoreanQuadruple{x, y, z, n};
}

std::array<double, 3> unit(const std::array<double, 3>& v) {
  const double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / len, v[1] / len, v[2] / len};
}

double norm_factor(ProjectorNorm norm) {
  return norm == ProjectorNorm::Frobenius ? std::sqrt(2.0) : 1.0;
}

}  // namespace

ProjectivePoint PythagoreanQuadruple::direction() const {
  return ProjectivePoint(ExactVec3(ExactScalar(x), ExactScalar(y), ExactScalar(z)));
}

std::vector<PythagoreanQuadruple> enumerate_quadruples(std::int64_t max_n) {
  if (max_n < 1) throw Error("max_n must be at least 1");
  std::vector<PythagoreanQuadruple> out;
  for (std::int64_t n = 1; n <= max_n; ++n) {
    // x >= 0 covers every line once the sign is canonicalized.
    for (std::int64_t x = 0; x <= n; ++x) {
      for (std::int64_t y = -n; y <= n; ++y) {
        const std::int64_t rest = n * n - x * x - y * y;
        if (rest < 0) continue;
        const std::int64_t z = isqrt(rest);
        if (z * z != rest) continue;
        for (std::int64_t zz : {z, -z}) {
          if (!canonical_sign(x, y, zz)) continue;
          if (auto q = make_quadruple(x, y, zz, n)) out.push_back(*q);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

DirectionSet rational_frames(std::int64_t max_n) {
  std::vector<ProjectivePoint> points;
  for (const auto& q : enumerate_quadruples(max_n)) points.push_back(q.direction());
  return DirectionSet::build(std::move(points), "rational-" + std::to_string(max_n));
}

RationalRotation::RationalRotation(const Quaternion& q) : q_(q) {
  const mpz_class w(q[0]), x(q[1]), y(q[2]), z(q[3]);
  const mpz_class s = w * w + x * x + y * y + z * z;
  if (s == 0) throw Error("zero quaternion does not define a rotation");
  const mpz_class raw[3][3] = {
      {w * w + x * x - y * y - z * z, 2 * (x * y - w * z), 2 * (x * z + w * y)},
      {2 * (x * y + w * z), w * w - x * x + y * y - z * z, 2 * (y * z - w * x)},
      {2 * (x * z - w * y), 2 * (y * z + w * x), w * w - x * x - y * y + z * z}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      m_[i][j] = Rational(raw[i][j], s);
      m_[i][j].canonicalize();
    }
  }
  if (!is_orthogonal(m_) || determinant(m_) != 1) {
    throw std::logic_error("quaternion map produced a non-rotation");
  }
}

ExactVec3 RationalRotation::apply(const ExactVec3& v) const {
  ExactVec3 out;
  for (std::size_t i = 0; i < 3; ++i) {
    ExactScalar acc;
    for (std::size_t j = 0; j < 3; ++j) acc += ExactScalar(m_[i][j]) * v[j];
    out[i] = acc;
  }
  return out;
}

ProjectivePoint RationalRotation::apply(const ProjectivePoint& p) const {
  return ProjectivePoint(apply(p.rep()));
}

Rational RationalRotation::cos_angle() const {
  // trace = 1 + 2 cos(theta)
  Rational trace = m_[0][0] + m_[1][1] + m_[2][2];
  return Rational((trace - 1) / 2);
}

Rational RationalRotation::sin2_angle() const {
  const Rational c = cos_angle();
  return Rational(1 - c * c);
}

double RationalRotation::sin_angle() const { return std::sqrt(sin2_angle().get_d()); }

RationalRotation make_rotation(const Quaternion& q) { return RationalRotation(q); }

bool is_orthogonal(const RationalMatrix& m) {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Rational acc = 0;
      for (int k = 0; k < 3; ++k) acc += m[k][i] * m[k][j];
      if (acc != (i == j ? 1 : 0)) return false;
    }
  }
  return true;
}

Rational determinant(const RationalMatrix& m) {
  return Rational(m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                  m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                  m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]));
}

bool is_totally_incompatible(const DirectionSet& ds) {
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds.frames_of(i).size() > 1) return false;
  }
  return true;
}

DirectionSet apply_rotations(const DirectionSet& source,
                             const std::vector<RationalRotation>& rotations, std::string name) {
  if (rotations.size() != source.frames().size()) {
    throw Error("expected " + std::to_string(source.frames().size()) + " rotations, got " +
                std::to_string(rotations.size()));
  }
  std::vector<ProjectivePoint> points;
  points.reserve(3 * rotations.size());
  for (std::size_t f = 0; f < rotations.size(); ++f) {
    for (std::size_t p : source.frames()[f]) points.push_back(rotations[f].apply(source.point(p)));
  }
  return DirectionSet::build(std::move(points), std::move(name));
}

namespace {

constexpr int kMaxAttempts = 64;
constexpr std::int64_t kAxisRange = 3;

// Small random axis, then the smallest scalar part whose angle has
// sine < eps, widened by a random factor in [1, 2].
Quaternion draw_quaternion(std::mt19937_64& rng, double eps) {
  std::uniform_int_distribution<std::int64_t> axis(-kAxisRange, kAxisRange);
  std::int64_t r1 = 0, r2 = 0, r3 = 0;
  while (r1 == 0 && r2 == 0 && r3 == 0) {
    r1 = axis(rng);
    r2 = axis(rng);
    r3 = axis(rng);
  }
  const long double v2 = r1 * r1 + r2 * r2 + r3 * r3;
  // sin(theta) = 2 N |v| / (N^2 + |v|^2)
  auto sine = [&](std::int64_t n) {
    const long double nn = static_cast<long double>(n);
    return 2.0L * nn * std::sqrt(v2) / (nn * nn + v2);
  };
  auto n_min = static_cast<std::int64_t>(std::ceil(2.0L * std::sqrt(v2) / eps));
  n_min = std::max<std::int64_t>(n_min, 1);
  while (sine(n_min) >= eps) ++n_min;
  std::uniform_int_distribution<std::int64_t> widen(0, n_min);
  return {n_min + widen(rng), r1, r2, r3};
}

}  // namespace

PerturbationPlan perturb_frames(const DirectionSet& ds, double epsilon, std::uint64_t seed,
                                ProjectorNorm norm) {
  if (ds.frames().empty()) throw Error("perturb_frames needs a set with at least one frame");
  if (!(epsilon > 0)) throw Error("epsilon must be positive");
  const double sep = min_separation(ds, norm);
  if (!(epsilon < sep / 2)) {
    throw Error("epsilon " + std::to_string(epsilon) + " must be below half the minimum point "
                "separation (" + std::to_string(sep / 2) + ")");
  }
  const double eps_operator = epsilon / norm_factor(norm);

  PerturbationPlan plan;
  plan.source = ds;
  plan.epsilon = epsilon;
  plan.seed = seed;
  plan.norm = norm;

  std::mt19937_64 rng(seed);
  for (int attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    std::vector<RationalRotation> rotations;
    rotations.reserve(ds.frames().size());
    for (std::size_t f = 0; f < ds.frames().size(); ++f) {
      rotations.emplace_back(draw_quaternion(rng, eps_operator));
    }
    DirectionSet result;
    try {
      result = apply_rotations(ds, rotations, ds.name() + "-perturbed");
    } catch (const Error&) {
      continue;  // two images coincided
    }
    if (!is_totally_incompatible(result) || result.frames().size() != ds.frames().size()) {
      continue;
    }
    bool close = true;
    for (std::size_t f = 0; f < ds.frames().size() && close; ++f) {
      close = frame_distance(ds.frame(f), result.frame(f), norm) < epsilon;
    }
    if (!close) continue;

    plan.rotations = std::move(rotations);
    plan.attempts = attempt;
    plan.result = std::move(result);
    return plan;
  }
  throw Error("no totally incompatible perturbation found in " + std::to_string(kMaxAttempts) +
              " attempts; try a larger epsilon or a different seed");
}

double projector_distance(const std::array<double, 3>& target, const PythagoreanQuadruple& q,
                          ProjectorNorm norm) {
  const auto t = unit(target);
  const auto u = unit({static_cast<double>(q.x), static_cast<double>(q.y),
                       static_cast<double>(q.z)});
  // |t x u| is the sine without the cancellation of sqrt(1 - cos^2).
  const double cx = t[1] * u[2] - t[2] * u[1];
  const double cy = t[2] * u[0] - t[0] * u[2];
  const double cz = t[0] * u[1] - t[1] * u[0];
  return std::sqrt(cx * cx + cy * cy + cz * cz) * norm_factor(norm);
}

PythagoreanQuadruple approximate_direction(const std::array<double, 3>& target, double epsilon,
                                           std::int64_t max_n, ProjectorNorm norm) {
  if (target[0] == 0 && target[1] == 0 && target[2] == 0) {
    throw Error("target direction must be nonzero");
  }
  if (!(epsilon > 0)) throw Error("epsilon must be positive");
  const auto t = unit(target);

  std::optional<PythagoreanQuadruple> best;
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::int64_t n = 1; n <= max_n; ++n) {
    // Lattice points within angle asin(eps) of the line lie within
    // n*sqrt2*eps of n*t (or -n*t, covered by the sign flip below).
    const double reach = std::min<double>(static_cast<double>(n),
                                          n * 1.5 * std::min(epsilon / norm_factor(norm), 1.0) + 1);
    const auto w = static_cast<std::int64_t>(std::ceil(reach));
    const auto cx = static_cast<std::int64_t>(std::llround(n * t[0]));
    const auto cy = static_cast<std::int64_t>(std::llround(n * t[1]));
    std::optional<PythagoreanQuadruple> hit;
    double hit_distance = std::numeric_limits<double>::infinity();
    for (std::int64_t x = std::max(-n, cx - w); x <= std::min(n, cx + w); ++x) {
      for (std::int64_t y = std::max(-n, cy - w); y <= std::min(n, cy + w); ++y) {
        const std::int64_t rest = n * n - x * x - y * y;
        if (rest < 0) continue;
        const std::int64_t z = isqrt(rest);
        if (z * z != rest) continue;
        for (std::int64_t zz : {z, -z}) {
          auto q = make_quadruple(x, y, zz, n);
          if (!q) continue;
          const double d = projector_distance(target, *q, norm);
          if (d < best_distance || (d == best_distance && best && *q < *best)) {
            best = q;
            best_distance = d;
          }
          if (d < epsilon && (d < hit_distance || (d == hit_distance && *q < *hit))) {
            hit = q;
            hit_distance = d;
          }
        }
      }
    }
    if (hit) return *hit;
  }
  PythagoreanQuadruple fallback = best.value_or(PythagoreanQuadruple{1, 0, 0, 1});
  throw ApproximationError("no rational direction within " + std::to_string(epsilon) +
                               " for n <= " + std::to_string(max_n) + "; best distance " +
                               std::to_string(best_distance),
                           fallback, best_distance);
}

Json plan_to_json(const PerturbationPlan& plan) {
  Json j;
  j["source"] = plan.source.name();
  j["seed"] = plan.seed;
  j["epsilon"] = plan.epsilon;
  j["norm"] = to_string(plan.norm);
  j["attempts"] = plan.attempts;
  Json quats = Json::array();
  for (const auto& r : plan.rotations) {
    const auto& q = r.quaternion();
    quats.push_back(Json::array({q[0], q[1], q[2], q[3]}));
  }
  j["quaternions"] = std::move(quats);
  j["result"] = to_json(plan.result);
  return j;
}

PerturbationPlan plan_from_json(const Json& j, const DirectionSet& source) {
  PerturbationPlan plan;
  plan.source = source;
  plan.seed = j.at("seed").get<std::uint64_t>();
  plan.epsilon = j.at("epsilon").get<double>();
  plan.norm = parse_norm(j.value("norm", std::string("operator")));
  plan.attempts = j.value("attempts", 0);
  for (const auto& q : j.at("quaternions")) {
    if (!q.is_array() || q.size() != 4) throw Error("quaternion must have four integers");
    plan.rotations.emplace_back(Quaternion{q[0].get<std::int64_t>(), q[1].get<std::int64_t>(),
                                           q[2].get<std::int64_t>(), q[3].get<std::int64_t>()});
  }
  plan.result = apply_rotations(source, plan.rotations, source.name() + "-perturbed");
  return plan;
}

}  // namespace kscolor
