#include "kscolor/bipartite_fwt.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <tuple>

#include "kscolor/error.hpp"
#include "kscolor/rational_gen.hpp"

namespace kscolor {

namespace {

std::size_t slot_of(const DirectionSet& ds, std::size_t frame, std::size_t point) {
  const Triangle& t = ds.frames()[frame];
  return static_cast<std::size_t>(std::find(t.begin(), t.end(), point) - t.begin());
}

// Value a frame function gives a covered point, via its first frame.
struct PointValue {
  std::size_t frame;
  std::size_t slot;
  std::uint8_t value;
};

std::optional<PointValue> point_value(const DirectionSet& ds, const FrameFunction& lambda,
                                      std::size_t point) {
  const auto frames = ds.frames_of(point);
  if (frames.empty()) return std::nullopt;
  const std::size_t f = frames.front();
  const std::size_t s = slot_of(ds, f, point);
  return PointValue{f, s, lambda.values[f][s]};
}

std::vector<std::array<double, 3>> unit_vectors(const DirectionSet& ds) {
  std::vector<std::array<double, 3>> out;
  out.reserve(ds.size());
  for (const auto& p : ds.points()) {
    auto v = p.rep().to_double();
    const double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    out.push_back({v[0] / len, v[1] / len, v[2] / len});
  }
  return out;
}

// Cheap float sine used only to skip pairs that are clearly far apart.
double approx_sine(const std::array<double, 3>& u, const std::array<double, 3>& v) {
  const double cx = u[1] * v[2] - u[2] * v[1];
  const double cy = u[2] * v[0] - u[0] * v[2];
  const double cz = u[0] * v[1] - u[1] * v[0];
  return std::sqrt(cx * cx + cy * cy + cz * cz);
}

struct ClosePair {
  std::size_t p, q;
  double distance;
};

// Pairs (p from a, q from b) with projector distance < radius. When a and
// b are the same set only p < q is reported.
std::vector<ClosePair> close_pairs(const DirectionSet& a, const DirectionSet& b, bool same,
                                   double radius, ProjectorNorm norm) {
  std::vector<ClosePair> out;
  if (!(radius > 0)) return out;
  const double factor = norm == ProjectorNorm::Frobenius ? std::sqrt(2.0) : 1.0;
  const auto ua = unit_vectors(a);
  const auto ub = same ? ua : unit_vectors(b);
  for (std::size_t p = 0; p < a.size(); ++p) {
    for (std::size_t q = same ? p + 1 : 0; q < b.size(); ++q) {
      if (approx_sine(ua[p], ub[q]) * factor > radius + 1e-9) continue;
      const double d = projector_distance(a.point(p), b.point(q), norm);
      if (d < radius) out.push_back({p, q, d});
    }
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

MkcModel model_from_colorings(const DirectionSet& ds_a, const DirectionSet& ds_b,
                              const std::vector<Coloring>& colorings_a,
                              const std::vector<Coloring>& colorings_b) {
  if (colorings_a.size() != colorings_b.size()) {
    throw Error("hidden-state count mismatch: " + std::to_string(colorings_a.size()) +
                " A colorings vs " + std::to_string(colorings_b.size()) + " B colorings");
  }
  MkcModel model{ds_a, ds_b, {}};
  model.hidden_states.reserve(colorings_a.size());
  for (std::size_t z = 0; z < colorings_a.size(); ++z) {
    model.hidden_states.push_back({coloring_to_frame_function(ds_a, colorings_a[z]),
                                   coloring_to_frame_function(ds_b, colorings_b[z])});
  }
  return model;
}

std::vector<ExperimentRun> run_experiment_grid(const MkcModel& model, std::size_t max_runs) {
  const std::size_t na = model.settings_a.frames().size();
  const std::size_t nb = model.settings_b.frames().size();
  const std::size_t nz = model.hidden_states.size();
  const long double total = static_cast<long double>(na) * nb * nz;
  if (total > static_cast<long double>(max_runs)) {
    throw Error("experiment grid of " + std::to_string(na) + " x " + std::to_string(nb) + " x " +
                std::to_string(nz) + " runs exceeds the limit of " + std::to_string(max_runs));
  }
  std::vector<ExperimentRun> runs;
  runs.reserve(na * nb * nz);
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < nb; ++b) {
      for (std::size_t z = 0; z < nz; ++z) {
        const HiddenState& h = model.hidden_states[z];
        runs.push_back({a, b, z, h.a.values[a], h.b.values[b]});
      }
    }
  }
  return runs;
}

std::vector<NatureViolation> check_nature(const MkcModel& model) {
  const DirectionSet& A = model.settings_a;
  const DirectionSet& B = model.settings_b;
  std::vector<NatureViolation> out;
  for (std::size_t p = 0; p < A.size(); ++p) {
    if (A.frames_of(p).empty()) continue;
    const auto q = B.index_of(A.point(p));
    if (!q || B.frames_of(*q).empty()) continue;
    for (std::size_t fa : A.frames_of(p)) {
      const std::size_t i = slot_of(A, fa, p);
      for (std::size_t fb : B.frames_of(*q)) {
        const std::size_t j = slot_of(B, fb, *q);
        for (std::size_t z = 0; z < model.hidden_states.size(); ++z) {
          const auto f = model.hidden_states[z].a.values[fa][i];
          const auto g = model.hidden_states[z].b.values[fb][j];
          if (f != g) out.push_back({fa, fb, i, j, z, f, g});
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const NatureViolation& x, const NatureViolation& y) {
    return std::tie(x.z, x.a_frame, x.b_frame, x.i, x.j) <
           std::tie(y.z, y.a_frame, y.b_frame, y.i, y.j);
  });
  return out;
}

std::vector<NatureWitness> find_nature_fp_witness(const MkcModel& model, double epsilon,
                                                  bool within_a, ProjectorNorm norm) {
  const DirectionSet& A = model.settings_a;
  const DirectionSet& B = model.settings_b;
  std::vector<NatureWitness> out;

  auto scan = [&](WitnessScope scope, const DirectionSet& other,
                  const std::vector<ClosePair>& pairs) {
    for (std::size_t z = 0; z < model.hidden_states.size(); ++z) {
      const HiddenState& h = model.hidden_states[z];
      const FrameFunction& other_fn = scope == WitnessScope::CrossWings ? h.b : h.a;
      for (const ClosePair& cp : pairs) {
        const auto f = point_value(A, h.a, cp.p);
        const auto g = point_value(other, other_fn, cp.q);
        if (!f || !g || f->value == g->value) continue;
        out.push_back({scope, z, f->frame, g->frame, f->slot, g->slot, cp.p, cp.q, cp.distance,
                       f->value, g->value});
      }
    }
  };

  scan(WitnessScope::CrossWings, B, close_pairs(A, B, false, epsilon, norm));
  if (within_a) scan(WitnessScope::WithinA, A, close_pairs(A, A, true, epsilon, norm));

  std::sort(out.begin(), out.end(), [](const NatureWitness& x, const NatureWitness& y) {
    return std::tie(x.distance, x.z, x.scope, x.a_point, x.b_point) <
           std::tie(y.distance, y.z, y.scope, y.a_point, y.b_point);
  });
  return out;
}

FrameFunction merged_frame_function(const MkcModel& model, std::size_t z) {
  const DirectionSet& A = model.settings_a;
  const DirectionSet& B = model.settings_b;
  if (!std::equal(A.points().begin(), A.points().end(), B.points().begin(), B.points().end())) {
    throw Error("merging needs identical settings on both wings");
  }
  const HiddenState& h = model.hidden_states.at(z);
  std::vector<std::string> conflicts;
  for (std::size_t p = 0; p < A.size(); ++p) {
    std::optional<std::uint8_t> seen;
    std::size_t seen_frame = 0;
    char seen_side = 'A';
    auto visit = [&](char side, const FrameFunction& fn) {
      for (std::size_t f : A.frames_of(p)) {
        const auto v = fn.values[f][slot_of(A, f, p)];
        if (!seen) {
          seen = v;
          seen_frame = f;
          seen_side = side;
        } else if (*seen != v) {
          conflicts.push_back("point " + std::to_string(p) + ": " + seen_side + " frame " +
                              std::to_string(seen_frame) + " vs " + side + " frame " +
                              std::to_string(f));
        }
      }
    };
    visit('A', h.a);
    visit('B', h.b);
  }
  if (!conflicts.empty()) {
    std::string msg = "merged values for hidden state " + std::to_string(z) +
                      " are not a frame function:";
    for (const auto& c : conflicts) msg += "\n  " + c;
    throw Error(msg);
  }
  return h.a;
}

std::vector<StatsRow> discontinuity_stats(const DirectionSet& ds, const Coloring& c,
                                          const std::vector<double>& radii, ProjectorNorm norm) {
  const auto violations = verify_coloring(ds, c);
  if (!violations.empty()) throw Error("coloring is not valid: " + to_string(violations.front()));

  std::vector<double> distances;
  std::vector<bool> differ;
  const double far = radii.empty() ? 0.0 : *std::max_element(radii.begin(), radii.end());
  for (const ClosePair& cp : close_pairs(ds, ds, true, far, norm)) {
    distances.push_back(cp.distance);
    differ.push_back(c.assignment[cp.p] != c.assignment[cp.q]);
  }
  std::vector<StatsRow> rows;
  for (double r : radii) {
    StatsRow row{r, 0, 0, 0.0};
    for (std::size_t k = 0; k < distances.size(); ++k) {
      if (distances[k] < r) {
        ++row.pairs;
        if (differ[k]) ++row.disagreements;
      }
    }
    row.fraction = row.pairs ? static_cast<double>(row.disagreements) / row.pairs : 0.0;
    rows.push_back(row);
  }
  return rows;
}

std::string stats_to_csv(const std::vector<StatsRow>& rows) {
  std::ostringstream os;
  os << "radius,pairs,disagreements,fraction\n";
  os << std::setprecision(12);
  for (const auto& r : rows) {
    os << r.radius << "," << r.pairs << "," << r.disagreements << "," << r.fraction << "\n";
  }
  return os.str();
}

Json witnesses_to_json(const MkcModel& model, const std::vector<NatureWitness>& witnesses) {
  Json out = Json::array();
  for (const auto& w : witnesses) {
    const bool cross = w.scope == WitnessScope::CrossWings;
    const DirectionSet& other = cross ? model.settings_b : model.settings_a;
    Json j;
    j["scope"] = cross ? "cross" : "within_a";
    j["z"] = w.z;
    j["a_frame"] = w.a_frame;
    j["b_frame"] = w.b_frame;
    j["i"] = w.i;
    j["j"] = w.j;
    j["a_point"] = to_json(model.settings_a.point(w.a_point));
    j["b_point"] = to_json(other.point(w.b_point));
    j["distance"] = w.distance;
    j["values"] = Json::array({w.f_value, w.g_value});
    out.push_back(std::move(j));
  }
  return out;
}

bool FwtReport::nature_fp_violated() const {
  return !witnesses_per_state.empty() &&
         std::all_of(witnesses_per_state.begin(), witnesses_per_state.end(),
                     [](std::size_t n) { return n > 0; });
}

namespace {

// A uniformly random frame function, accepted only if it is also a valid
// coloring (cross-frame orthogonal pairs could forbid some choices).
Coloring random_coloring(const DirectionSet& ds, std::mt19937_64& rng) {
  static constexpr std::array<Outcome, 3> kT = {{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}};
  std::uniform_int_distribution<int> pick(0, 2);
  for (int attempt = 0; attempt < 100; ++attempt) {
    FrameFunction lambda;
    for (std::size_t f = 0; f < ds.frames().size(); ++f) lambda.values.push_back(kT[pick(rng)]);
    Coloring c = frame_function_to_coloring(ds, lambda);
    if (verify_coloring(ds, c).empty()) return c;
  }
  throw Error("could not draw a random coloring of " + ds.name());
}

}  // namespace

FwtReport run_fwt(const DirectionSet& source, const FwtConfig& config) {
  if (config.hidden_states == 0) throw Error("at least one hidden state is required");
  FwtReport report;
  report.source_name = source.name();
  report.source_points = source.size();
  report.config = config;
  report.radius = 2 * config.epsilon;

  const DirectionSet completed = complete_frames(source);
  report.completed_points = completed.size();
  report.completed_frames = completed.frames().size();

  const PerturbationPlan plan_a = perturb_frames(completed, config.epsilon, config.seed, config.norm);
  const PerturbationPlan plan_b =
      perturb_frames(completed, config.epsilon, splitmix64(config.seed), config.norm);
  const DirectionSet side_a = plan_a.result.renamed(source.name() + "-A");
  const DirectionSet side_b = plan_b.result.renamed(source.name() + "-B");

  std::vector<Coloring> colorings_a, colorings_b;
  for (const DirectionSet* side : {&side_a, &side_b}) {
    SolveReport solved = solve(*side);
    if (solved.verdict != Verdict::Colorable) {
      throw Error("perturbed set " + side->name() + " is unexpectedly uncolorable");
    }
    (side == &side_a ? colorings_a : colorings_b).push_back(*solved.witness);
  }
  std::mt19937_64 rng(splitmix64(splitmix64(config.seed)));
  for (std::size_t z = 1; z < config.hidden_states; ++z) {
    colorings_a.push_back(random_coloring(side_a, rng));
    colorings_b.push_back(random_coloring(side_b, rng));
  }

  report.model = model_from_colorings(side_a, side_b, colorings_a, colorings_b);
  report.nature_violations = check_nature(report.model);
  report.witnesses = find_nature_fp_witness(report.model, report.radius, true, config.norm);
  report.witnesses_per_state.assign(config.hidden_states, 0);
  for (const auto& w : report.witnesses) ++report.witnesses_per_state[w.z];
  return report;
}

Json fwt_report_to_json(const FwtReport& report, std::size_t max_witnesses) {
  Json j;
  j["source"] = report.source_name;
  j["source_points"] = report.source_points;
  j["completed_points"] = report.completed_points;
  j["completed_frames"] = report.completed_frames;
  j["epsilon"] = report.config.epsilon;
  j["seed"] = report.config.seed;
  j["norm"] = to_string(report.config.norm);
  j["radius"] = report.radius;
  j["hidden_states"] = report.config.hidden_states;
  j["frames_a"] = report.model.settings_a.frames().size();
  j["frames_b"] = report.model.settings_b.frames().size();
  j["nature_exact_holds"] = report.nature_holds();
  j["nature_violations"] = report.nature_violations.size();
  j["nature_fp_violated"] = report.nature_fp_violated();
  j["witness_count"] = report.witnesses.size();
  j["witnesses_per_state"] = report.witnesses_per_state;
  std::vector<NatureWitness> shown(
      report.witnesses.begin(),
      report.witnesses.begin() +
          static_cast<std::ptrdiff_t>(std::min(max_witnesses, report.witnesses.size())));
  j["witnesses"] = witnesses_to_json(report.model, shown);
  return j;
}

}  // namespace kscolor
