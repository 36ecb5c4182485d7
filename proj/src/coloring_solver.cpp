#include "kscolor/coloring_solver.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "kscolor/error.hpp"

namespace kscolor {

bool Coloring::is_total() const {
  return std::none_of(assignment.begin(), assignment.end(),
                      [](std::int8_t v) { return v == kUnassigned; });
}

bool is_outcome(const Outcome& o) {
  return o[0] <= 1 && o[1] <= 1 && o[2] <= 1 && o[0] + o[1] + o[2] == 2;
}

std::string to_string(Verdict v) {
  return v == Verdict::Colorable ? "COLORABLE" : "UNCOLORABLE";
}

namespace {

class Search {
 public:
  Search(const DirectionSet& ds, SolveStats& stats)
      : ds_(ds), stats_(stats), value_(ds.size(), Coloring::kUnassigned) {
    order_.resize(ds.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return degree(a) > degree(b);
    });
  }

  bool run() { return descend(0); }

  Coloring coloring() const { return Coloring{value_}; }

 private:
  std::size_t degree(std::size_t p) const {
    return ds_.frames_of(p).size() + ds_.neighbors(p).size();
  }

  // Assigns and queues; false on a clash with an existing value.
  bool assign(std::size_t p, std::int8_t v) {
    if (value_[p] != Coloring::kUnassigned) return value_[p] == v;
    value_[p] = v;
    trail_.push_back(p);
    return true;
  }

  bool propagate(std::size_t from) {
    for (std::size_t head = from; head < trail_.size(); ++head) {
      const std::size_t p = trail_[head];
      if (value_[p] == 0) {
        for (std::size_t q : ds_.neighbors(p)) {
          ++stats_.propagations;
          if (!assign(q, 1)) return false;
        }
      }
      for (std::size_t f : ds_.frames_of(p)) {
        const Triangle& t = ds_.frames()[f];
        int ones = 0, zeros = 0;
        std::size_t open = 0;
        for (std::size_t q : t) {
          if (value_[q] == 1) {
            ++ones;
          } else if (value_[q] == 0) {
            ++zeros;
          } else {
            open = q;
          }
        }
        if (ones == 3 || zeros >= 2) return false;
        if (ones == 2 && zeros == 0) {
          ++stats_.propagations;
          if (!assign(open, 0)) return false;
        } else if (zeros == 1 && ones < 2) {
          for (std::size_t q : t) {
            if (value_[q] == Coloring::kUnassigned) {
              ++stats_.propagations;
              if (!assign(q, 1)) return false;
            }
          }
        }
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[trail_.back()] = Coloring::kUnassigned;
      trail_.pop_back();
    }
  }

  bool descend(std::size_t pos) {
    while (pos < order_.size() && value_[order_[pos]] != Coloring::kUnassigned) ++pos;
    if (pos == order_.size()) return true;
    const std::size_t p = order_[pos];
    for (std::int8_t v : {std::int8_t{1}, std::int8_t{0}}) {
      ++stats_.nodes;
      const std::size_t mark = trail_.size();
      assign(p, v);
      if (propagate(mark) && descend(pos + 1)) return true;
      undo(mark);
    }
    return false;
  }

  const DirectionSet& ds_;
  SolveStats& stats_;
  std::vector<std::int8_t> value_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> trail_;
};

}  // namespace

SolveReport solve(const DirectionSet& ds) {
  SolveReport report;
  const auto start = std::chrono::steady_clock::now();
  Search search(ds, report.stats);
  if (search.run()) {
    Coloring c = search.coloring();
    if (!verify_coloring(ds, c).empty()) {
      throw std::logic_error("solver produced an invalid coloring for " + ds.name());
    }
    report.verdict = Verdict::Colorable;
    report.witness = std::move(c);
  } else {
    report.verdict = Verdict::Uncolorable;
  }
  report.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string to_string(const Violation& v) {
  std::ostringstream os;
  os << (v.kind == Violation::Kind::Frame ? "frame " : "edge ") << v.index << " (";
  for (std::size_t k = 0; k < v.points.size(); ++k) {
    if (k) os << ",";
    os << v.points[k] << "=" << v.values[k];
  }
  os << ") sums to " << v.sum
     << (v.kind == Violation::Kind::Frame ? ", expected 2" : ", expected >= 1");
  return os.str();
}

std::vector<Violation> verify_coloring(const DirectionSet& ds, const Coloring& c) {
  if (c.assignment.size() != ds.size()) {
    throw Error("coloring has " + std::to_string(c.assignment.size()) +
                " values for a set of " + std::to_string(ds.size()) + " points");
  }
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto v = c.assignment[i];
    if (v == Coloring::kUnassigned) {
      throw Error("coloring leaves point " + std::to_string(i) + " unassigned");
    }
    if (v != 0 && v != 1) throw Error("coloring value at point " + std::to_string(i) + " is not 0/1");
  }

  std::vector<Violation> out;
  for (std::size_t f = 0; f < ds.frames().size(); ++f) {
    const Triangle& t = ds.frames()[f];
    Violation v{Violation::Kind::Frame, f, {t.begin(), t.end()}, {}, 0};
    for (std::size_t p : t) {
      v.values.push_back(c.assignment[p]);
      v.sum += c.assignment[p];
    }
    if (v.sum != 2) out.push_back(std::move(v));
  }
  for (std::size_t e = 0; e < ds.edges().size(); ++e) {
    const Edge& ed = ds.edges()[e];
    const int a = c.assignment[ed[0]], b = c.assignment[ed[1]];
    if (a + b < 1) out.push_back({Violation::Kind::Edge, e, {ed[0], ed[1]}, {a, b}, a + b});
  }
  return out;
}

std::uint64_t count_colorings(const DirectionSet& ds) {
  constexpr std::size_t kLimit = 30;
  const std::size_t n = ds.size();
  if (n > kLimit) {
    throw Error("count_colorings is limited to " + std::to_string(kLimit) +
                " points; set has " + std::to_string(n));
  }
  // Each constraint is checked once its highest-index point is fixed.
  std::vector<std::vector<Triangle>> frames_at(n);
  std::vector<std::vector<Edge>> edges_at(n);
  for (const Triangle& t : ds.frames()) frames_at[t[2]].push_back(t);
  for (const Edge& e : ds.edges()) edges_at[e[1]].push_back(e);

  std::vector<int> value(n, 0);
  std::uint64_t count = 0;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      ++count;
      return;
    }
    for (int v = 0; v <= 1; ++v) {
      value[k] = v;
      bool ok = true;
      for (const Triangle& t : frames_at[k]) {
        if (value[t[0]] + value[t[1]] + value[t[2]] != 2) {
          ok = false;
          break;
        }
      }
      for (std::size_t i = 0; ok && i < edges_at[k].size(); ++i) {
        const Edge& e = edges_at[k][i];
        if (value[e[0]] + value[e[1]] < 1) ok = false;
      }
      if (ok) self(self, k + 1);
    }
  };
  rec(rec, 0);
  return count;
}

FrameFunction coloring_to_frame_function(const DirectionSet& ds, const Coloring& c) {
  const auto violations = verify_coloring(ds, c);
  if (!violations.empty()) {
    throw Error("not a valid coloring of " + ds.name() + ": " + to_string(violations.front()) +
                (violations.size() > 1
                     ? " (and " + std::to_string(violations.size() - 1) + " more)"
                     : ""));
  }
  FrameFunction lambda;
  lambda.values.reserve(ds.frames().size());
  for (const Triangle& t : ds.frames()) {
    lambda.values.push_back({static_cast<std::uint8_t>(c.assignment[t[0]]),
                             static_cast<std::uint8_t>(c.assignment[t[1]]),
                             static_cast<std::uint8_t>(c.assignment[t[2]])});
  }
  return lambda;
}

std::vector<std::string> verify_frame_function(const DirectionSet& ds,
                                               const FrameFunction& lambda) {
  std::vector<std::string> problems;
  if (lambda.values.size() != ds.frames().size()) {
    problems.push_back("frame function has " + std::to_string(lambda.values.size()) +
                       " values for " + std::to_string(ds.frames().size()) + " frames");
    return problems;
  }
  for (std::size_t f = 0; f < lambda.values.size(); ++f) {
    if (!is_outcome(lambda.values[f])) {
      problems.push_back("frame " + std::to_string(f) + " has a value outside T");
    }
  }
  for (std::size_t p = 0; p < ds.size(); ++p) {
    const auto frames = ds.frames_of(p);
    if (frames.size() < 2) continue;
    auto slot = [&](std::size_t f) {
      const Triangle& t = ds.frames()[f];
      return static_cast<std::size_t>(std::find(t.begin(), t.end(), p) - t.begin());
    };
    const std::size_t f0 = frames[0];
    const auto v0 = lambda.values[f0][slot(f0)];
    for (std::size_t k = 1; k < frames.size(); ++k) {
      const std::size_t f = frames[k];
      const auto v = lambda.values[f][slot(f)];
      if (v != v0) {
        problems.push_back("frames " + std::to_string(f0) + " and " + std::to_string(f) +
                           " disagree at shared point " + std::to_string(p) + " (" +
                           std::to_string(v0) + " vs " + std::to_string(v) + ")");
      }
    }
  }
  return problems;
}

Coloring frame_function_to_coloring(const DirectionSet& ds, const FrameFunction& lambda) {
  const auto problems = verify_frame_function(ds, lambda);
  if (!problems.empty()) {
    std::string msg = "not a frame function on " + ds.name() + ":";
    for (const auto& p : problems) msg += "\n  " + p;
    throw Error(msg);
  }
  Coloring c;
  c.assignment.assign(ds.size(), 1);
  for (std::size_t f = 0; f < ds.frames().size(); ++f) {
    const Triangle& t = ds.frames()[f];
    for (std::size_t s = 0; s < 3; ++s) {
      c.assignment[t[s]] = static_cast<std::int8_t>(lambda.values[f][s]);
    }
  }
  return c;
}

std::string export_cnf(const DirectionSet& ds) {
  std::ostringstream os;
  os << "c kscolor coloring instance\n";
  os << "c set " << (ds.name().empty() ? "unnamed" : ds.name()) << "\n";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    os << "c point " << (i + 1) << " = " << to_string(ds.point(i)) << "\n";
  }
  os << "p cnf " << ds.size() << " " << (ds.frames().size() + ds.edges().size()) << "\n";
  for (const Triangle& t : ds.frames()) {
    os << "-" << (t[0] + 1) << " -" << (t[1] + 1) << " -" << (t[2] + 1) << " 0\n";
  }
  for (const Edge& e : ds.edges()) os << (e[0] + 1) << " " << (e[1] + 1) << " 0\n";
  return os.str();
}

}  // namespace kscolor
