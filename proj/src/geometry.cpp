#include "kscolor/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "kscolor/error.hpp"

namespace kscolor {

namespace {

constexpr std::int64_t kSmallLimit = std::int64_t{1} << 30;

bool fits_small(const mpz_class& z) {
  return z.fits_slong_p() && std::abs(z.get_si()) < kSmallLimit;
}

Rational from_int128(__int128 v) {
  if (v >= std::numeric_limits<long>::min() && v <= std::numeric_limits<long>::max()) {
    return Rational(static_cast<long>(v));
  }
  const bool negative = v < 0;
  unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(v)
                                   : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(mag >> 64));
  mpz_class lo(static_cast<unsigned long>(mag & 0xFFFFFFFFFFFFFFFFULL));
  mpz_class out = (hi << 64) + lo;
  if (negative) out = -out;
  return Rational(out);
}

}  // namespace

std::string to_string(ProjectorNorm norm) {
  return norm == ProjectorNorm::Frobenius ? "frobenius" : "operator";
}

ProjectorNorm parse_norm(std::string_view text) {
  if (text == "operator") return ProjectorNorm::Operator;
  if (text == "frobenius") return ProjectorNorm::Frobenius;
  throw Error("unknown norm \"" + std::string(text) + "\" (expected operator or frobenius)");
}

ProjectivePoint::ProjectivePoint(const ExactVec3& v) {
  std::size_t first = 3;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!v[i].is_zero()) {
      first = i;
      break;
    }
  }
  if (first == 3) throw Error("cannot canonicalize the zero vector");

  // Scale so the first nonzero coordinate is 1.
  const ExactScalar inv = v[first].inverse();
  std::array<Rational, 6> parts;
  for (std::size_t i = 0; i < 3; ++i) {
    ExactScalar s = i == first ? ExactScalar(1) : inv * v[i];
    parts[2 * i] = s.rat();
    parts[2 * i + 1] = s.irr();
  }

  mpz_class den = 1;
  for (const auto& q : parts) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  std::array<mpz_class, 6> ints;
  mpz_class content = 0;
  for (std::size_t k = 0; k < 6; ++k) {
    ints[k] = parts[k].get_num() * (den / parts[k].get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), ints[k].get_mpz_t());
  }
  bool small = true;
  for (auto& z : ints) {
    z /= content;
    small = small && fits_small(z);
  }

  rep_ = ExactVec3(ExactScalar(Rational(ints[0]), Rational(ints[1])),
                   ExactScalar(Rational(ints[2]), Rational(ints[3])),
                   ExactScalar(Rational(ints[4]), Rational(ints[5])));
  if (small) {
    SmallRep s{};
    for (std::size_t i = 0; i < 3; ++i) {
      s[i][0] = ints[2 * i].get_si();
      s[i][1] = ints[2 * i + 1].get_si();
    }
    small_ = s;
  }
}

std::strong_ordering operator<=>(const ProjectivePoint& a, const ProjectivePoint& b) {
  for (std::size_t i = 0; i < 3; ++i) {
    const int c = compare_parts(a.rep_[i], b.rep_[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

namespace {

struct Int128Pair {
  __int128 rat = 0;
  __int128 irr = 0;
};

template <typename Small>
Int128Pair small_dot(const Small& u, const Small& v) {
  Int128Pair out;
  for (std::size_t i = 0; i < 3; ++i) {
    const __int128 a1 = u[i][0], b1 = u[i][1], a2 = v[i][0], b2 = v[i][1];
    out.rat += a1 * a2 + 2 * b1 * b2;
    out.irr += a1 * b2 + a2 * b1;
  }
  return out;
}

}  // namespace

ExactScalar dot(const ProjectivePoint& p, const ProjectivePoint& q) {
  if (p.small_ && q.small_) {
    const Int128Pair d = small_dot(*p.small_, *q.small_);
    return ExactScalar(from_int128(d.rat), from_int128(d.irr));
  }
  return dot(p.rep_, q.rep_);
}

bool orthogonal(const ProjectivePoint& p, const ProjectivePoint& q) {
  if (p.small_ && q.small_) {
    const Int128Pair d = small_dot(*p.small_, *q.small_);
    return d.rat == 0 && d.irr == 0;
  }
  return dot(p.rep_, q.rep_).is_zero();
}

ProjectivePoint canonicalize(const ExactVec3& v) { return ProjectivePoint(v); }

std::string to_string(const ProjectivePoint& p) { return to_string(p.rep()); }

ExactScalar cos2_angle(const ProjectivePoint& p, const ProjectivePoint& q) {
  const ExactScalar pq = dot(p, q);
  return (pq * pq) / (dot(p, p) * dot(q, q));
}

double projector_distance(const ProjectivePoint& p, const ProjectivePoint& q,
                          ProjectorNorm norm) {
  if (p == q) return 0.0;
  const ExactScalar sin2 = ExactScalar(1) - cos2_angle(p, q);
  const double s = std::sqrt(std::max(0.0, sin2.to_double()));
  return norm == ProjectorNorm::Frobenius ? s * std::sqrt(2.0) : s;
}

Frame::Frame(ProjectivePoint a, ProjectivePoint b, ProjectivePoint c)
    : points_{std::move(a), std::move(b), std::move(c)} {
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      if (!orthogonal(points_[i], points_[j])) {
        throw Error("frame points " + to_string(points_[i]) + " and " +
                    to_string(points_[j]) + " are not orthogonal");
      }
    }
  }
}

double frame_distance(const Frame& f, const Frame& g, ProjectorNorm norm) {
  double worst = 0.0;
  for (const auto& p : f.points()) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : g.points()) best = std::min(best, projector_distance(p, q, norm));
    worst = std::max(worst, best);
  }
  return worst;
}

DirectionSet DirectionSet::build(std::vector<ProjectivePoint> points, std::string name) {
  DirectionSet ds;
  ds.name_ = std::move(name);
  ds.points_ = std::move(points);
  const std::size_t n = ds.points_.size();

  ds.sorted_.resize(n);
  for (std::size_t i = 0; i < n; ++i) ds.sorted_[i] = i;
  std::sort(ds.sorted_.begin(), ds.sorted_.end(), [&](std::size_t a, std::size_t b) {
    const auto c = ds.points_[a] <=> ds.points_[b];
    return c < 0 || (c == 0 && a < b);
  });
  std::string duplicates;
  for (std::size_t k = 1; k < n; ++k) {
    const std::size_t a = ds.sorted_[k - 1], b = ds.sorted_[k];
    if (ds.points_[a] == ds.points_[b]) {
      if (!duplicates.empty()) duplicates += "; ";
      duplicates += to_string(ds.points_[a]) + " at indices " + std::to_string(a) +
                    " and " + std::to_string(b);
    }
  }
  if (!duplicates.empty()) throw Error("duplicate directions: " + duplicates);

  ds.adjacency_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (orthogonal(ds.points_[i], ds.points_[j])) {
        ds.edges_.push_back({i, j});
        ds.adjacency_[i].push_back(j);
        ds.adjacency_[j].push_back(i);
      }
    }
  }
  for (auto& adj : ds.adjacency_) std::sort(adj.begin(), adj.end());

  // Triangles i < j < k: intersect the higher neighbours of i and j.
  ds.incidence_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    const auto& ai = ds.adjacency_[i];
    for (std::size_t j : ai) {
      if (j <= i) continue;
      const auto& aj = ds.adjacency_[j];
      auto it_i = std::upper_bound(ai.begin(), ai.end(), j);
      auto it_j = std::upper_bound(aj.begin(), aj.end(), j);
      while (it_i != ai.end() && it_j != aj.end()) {
        if (*it_i < *it_j) {
          ++it_i;
        } else if (*it_j < *it_i) {
          ++it_j;
        } else {
          const std::size_t f = ds.frames_.size();
          ds.frames_.push_back({i, j, *it_i});
          ds.incidence_[i].push_back(f);
          ds.incidence_[j].push_back(f);
          ds.incidence_[*it_i].push_back(f);
          ++it_i;
          ++it_j;
        }
      }
    }
  }
  return ds;
}

bool DirectionSet::adjacent(std::size_t i, std::size_t j) const {
  const auto& a = adjacency_[i];
  return std::binary_search(a.begin(), a.end(), j);
}

Frame DirectionSet::frame(std::size_t f) const {
  const Triangle& t = frames_.at(f);
  return Frame(points_[t[0]], points_[t[1]], points_[t[2]]);
}

std::vector<Frame> DirectionSet::frame_orderings(std::size_t f) const {
  Triangle t = frames_.at(f);
  std::vector<Frame> out;
  do {
    out.emplace_back(points_[t[0]], points_[t[1]], points_[t[2]]);
  } while (std::next_permutation(t.begin(), t.end()));
  return out;
}

std::optional<std::size_t> DirectionSet::index_of(const ProjectivePoint& p) const {
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), p,
                             [&](std::size_t i, const ProjectivePoint& q) {
                               return (points_[i] <=> q) < 0;
                             });
  if (it != sorted_.end() && points_[*it] == p) return *it;
  return std::nullopt;
}

bool DirectionSet::is_rational() const {
  return std::all_of(points_.begin(), points_.end(),
                     [](const ProjectivePoint& p) { return p.is_rational(); });
}

DirectionSet DirectionSet::renamed(std::string name) const {
  DirectionSet out = *this;
  out.name_ = std::move(name);
  return out;
}

DirectionSet build_direction_set(std::vector<ProjectivePoint> points, std::string name) {
  return DirectionSet::build(std::move(points), std::move(name));
}

DirectionSet complete_frames(const DirectionSet& ds) {
  std::vector<ProjectivePoint> points(ds.points().begin(), ds.points().end());
  std::set<ProjectivePoint> added;
  for (const Edge& e : ds.edges()) {
    const auto fa = ds.frames_of(e[0]);
    const auto fb = ds.frames_of(e[1]);
    const bool in_frame =
        std::any_of(fa.begin(), fa.end(), [&](std::size_t f) {
          return std::binary_search(fb.begin(), fb.end(), f);
        });
    if (in_frame) continue;
    ProjectivePoint third(cross(ds.point(e[0]).rep(), ds.point(e[1]).rep()));
    if (!ds.index_of(third) && added.insert(third).second) points.push_back(third);
  }
  return DirectionSet::build(std::move(points), ds.name());
}

double min_separation(const DirectionSet& ds, ProjectorNorm norm) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = i + 1; j < ds.size(); ++j) {
      best = std::min(best, projector_distance(ds.point(i), ds.point(j), norm));
    }
  }
  return best;
}

}  // namespace kscolor
