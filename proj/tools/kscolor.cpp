// kscolor: colorability of direction sets and the finite-precision
// two-wing pipeline.
//
// Exit codes: 0 success / positive verdict, 2 negative verdict
// (UNCOLORABLE, invalid coloring, pipeline found no violation), 1 error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kscolor/bipartite_fwt.hpp"
#include "kscolor/catalog.hpp"
#include "kscolor/coloring_solver.hpp"
#include "kscolor/error.hpp"
#include "kscolor/rational_gen.hpp"
#include "kscolor/serialization.hpp"

namespace {

using namespace kscolor;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kNegative = 2;

enum class Format { Text, Json };

struct Options {
  std::string set;
  std::string file;
  std::string output;
  std::string format = "text";
  std::string norm = "operator";
  std::string coloring;
  double epsilon = 0.02;
  std::uint64_t seed = 1;
  std::int64_t max_n = 5;
  std::size_t hidden_states = 4;
  std::vector<double> radii = {0.01, 0.02, 0.04, 0.08};
};

Format format_of(const Options& o) { return o.format == "json" ? Format::Json : Format::Text; }

DirectionSet input_set(const Options& o) {
  if (!o.set.empty() && !o.file.empty()) throw Error("give either a set name or --file, not both");
  if (!o.file.empty()) {
    LoadResult r = load(o.file);
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    return std::move(r.set);
  }
  if (o.set.empty()) throw Error("no direction set given (name a builtin or use --file)");
  return resolve_set(o.set);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("error writing " + path);
}

// Writes to -o when given, else stdout.
void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
  } else {
    write_text(o.output, text);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string shape(const DirectionSet& ds) {
  std::ostringstream os;
  os << ds.size() << " directions, " << ds.edges().size() << " orthogonal pairs, "
     << ds.frames().size() << " frames";
  return os.str();
}

int cmd_verify(const Options& o) {
  const DirectionSet ds = input_set(o);

  if (!o.coloring.empty()) {
    std::ifstream in(o.coloring);
    if (!in) throw Error("cannot read " + o.coloring);
    std::stringstream buf;
    buf << in.rdbuf();
    const Coloring c = coloring_from_json(parse_json_text(buf.str()), ds.size());
    const auto violations = verify_coloring(ds, c);
    if (format_of(o) == Format::Json) {
      Json j;
      j["set"] = ds.name();
      j["valid"] = violations.empty();
      Json list = Json::array();
      for (const auto& v : violations) list.push_back(to_string(v));
      j["violations"] = list;
      emit(o, dump(j));
    } else {
      std::ostringstream os;
      os << "set: " << ds.name() << " (" << shape(ds) << ")\n";
      os << (violations.empty() ? "coloring: valid\n" : "coloring: INVALID\n");
      for (const auto& v : violations) os << "  " << to_string(v) << "\n";
      emit(o, os.str());
    }
    return violations.empty() ? kOk : kNegative;
  }

  const SolveReport r = solve(ds);
  const bool colorable = r.verdict == Verdict::Colorable;
  if (format_of(o) == Format::Json) {
    Json j;
    j["set"] = ds.name();
    j["points"] = ds.size();
    j["edges"] = ds.edges().size();
    j["frames"] = ds.frames().size();
    j["verdict"] = to_string(r.verdict);
    j["nodes"] = r.stats.nodes;
    j["propagations"] = r.stats.propagations;
    if (colorable && o.output.empty()) j["witness"] = coloring_to_json(*r.witness, ds.name());
    std::cout << dump(j);
  } else {
    std::cout << "set: " << ds.name() << " (" << shape(ds) << ")\n"
              << "verdict: " << to_string(r.verdict) << "\n"
              << "search: " << r.stats.nodes << " nodes, " << r.stats.propagations
              << " propagations, " << std::fixed << std::setprecision(3) << r.stats.wall_seconds
              << " s\n";
    if (colorable && o.output.empty()) {
      std::cout << "witness:";
      for (auto v : r.witness->assignment) std::cout << ' ' << static_cast<int>(v);
      std::cout << "\n";
    }
  }
  if (colorable && !o.output.empty()) write_text(o.output, dump(coloring_to_json(*r.witness, ds.name())));
  return colorable ? kOk : kNegative;
}

int cmd_gen_rational(const Options& o) {
  const DirectionSet ds = rational_frames(o.max_n);
  if (format_of(o) == Format::Text && !o.output.empty()) {
    save(ds, o.output);
    std::cout << ds.name() << ": " << shape(ds) << "\n";
  } else {
    emit(o, dump(to_json(ds)));
  }
  return kOk;
}

int cmd_perturb(const Options& o) {
  const DirectionSet ds = input_set(o);
  const PerturbationPlan plan = perturb_frames(ds, o.epsilon, o.seed, parse_norm(o.norm));
  if (format_of(o) == Format::Text && !o.output.empty()) {
    write_text(o.output, dump(plan_to_json(plan)));
    std::cout << "source: " << ds.name() << " (" << ds.frames().size() << " frames)\n"
              << "result: " << plan.result.name() << " (" << shape(plan.result) << ")\n"
              << "totally incompatible: "
              << (is_totally_incompatible(plan.result) ? "yes" : "no") << "\n"
              << "attempts: " << plan.attempts << "\n";
  } else {
    emit(o, dump(plan_to_json(plan)));
  }
  return kOk;
}

int cmd_fwt(const Options& o) {
  const DirectionSet ds = input_set(o);
  FwtConfig cfg;
  cfg.epsilon = o.epsilon;
  cfg.seed = o.seed;
  cfg.hidden_states = o.hidden_states;
  cfg.norm = parse_norm(o.norm);
  const FwtReport r = run_fwt(ds, cfg);
  const bool forced = r.nature_holds() && r.nature_fp_violated();

  if (format_of(o) == Format::Json) {
    emit(o, dump(fwt_report_to_json(r)));
  } else {
    if (!o.output.empty()) write_text(o.output, dump(fwt_report_to_json(r)));
    std::ostringstream os;
    os << "source: " << r.source_name << " (" << r.source_points << " directions, completed to "
       << r.completed_points << " directions / " << r.completed_frames << " frames)\n"
       << "wings: " << r.model.settings_a.frames().size() << " A frames, "
       << r.model.settings_b.frames().size() << " B frames, " << r.model.hidden_states.size()
       << " hidden states\n"
       << "epsilon: " << cfg.epsilon << " (" << to_string(cfg.norm) << " norm), seed " << cfg.seed
       << ", radius " << r.radius << "\n"
       << "exact agreement: "
       << (r.nature_holds() ? "holds" : std::to_string(r.nature_violations.size()) + " violations")
       << "\n"
       << "near disagreements: " << r.witnesses.size() << " pairs within radius\n";
    for (std::size_t z = 0; z < r.witnesses_per_state.size(); ++z) {
      os << "  z=" << z << ": " << r.witnesses_per_state[z] << " witnesses";
      for (const auto& w : r.witnesses) {
        if (w.z != z) continue;
        const DirectionSet& other =
            w.scope == WitnessScope::CrossWings ? r.model.settings_b : r.model.settings_a;
        os << "; closest " << to_string(r.model.settings_a.point(w.a_point)) << " -> "
           << static_cast<int>(w.f_value) << " vs " << to_string(other.point(w.b_point)) << " -> "
           << static_cast<int>(w.g_value) << " ("
           << (w.scope == WitnessScope::CrossWings ? "across wings" : "within A") << ", distance "
           << std::setprecision(6) << w.distance << ")";
        break;
      }
      os << "\n";
    }
    os << "result: "
       << (forced ? "exact agreement holds and every hidden state has a near disagreement"
                  : "no forced near disagreement")
       << "\n";
    std::cout << os.str();
  }
  return forced ? kOk : kNegative;
}

int cmd_cnf(const Options& o) {
  emit(o, export_cnf(input_set(o)));
  return kOk;
}

int cmd_stats(const Options& o) {
  const DirectionSet ds = input_set(o);
  Coloring c;
  if (!o.coloring.empty()) {
    std::ifstream in(o.coloring);
    if (!in) throw Error("cannot read " + o.coloring);
    std::stringstream buf;
    buf << in.rdbuf();
    c = coloring_from_json(parse_json_text(buf.str()), ds.size());
    const auto violations = verify_coloring(ds, c);
    if (!violations.empty()) throw Error("coloring is invalid: " + to_string(violations.front()));
  } else {
    const SolveReport r = solve(ds);
    if (!r.witness) throw Error(ds.name() + " is uncolorable; no coloring to measure");
    c = *r.witness;
  }
  for (double r : o.radii) {
    if (!(r > 0)) throw Error("radii must be positive");
  }
  emit(o, stats_to_csv(discontinuity_stats(ds, c, o.radii, parse_norm(o.norm))));
  return kOk;
}

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& help,
                      Options& o, bool takes_set) {
  CLI::App* cmd = app.add_subcommand(name, help);
  if (takes_set) {
    cmd->add_option("set", o.set, "builtin name (peres33, ck31, bub33) or path to a set file");
    cmd->add_option("--file", o.file, "direction set file");
  }
  cmd->add_option("-o,--output", o.output, "output file (default stdout)");
  cmd->add_option("--format", o.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  return cmd;
}

void add_norm(CLI::App* cmd, Options& o) {
  cmd->add_option("--norm", o.norm, "projector distance: operator (sin of angle) or frobenius")
      ->check(CLI::IsMember({"operator", "frobenius"}))
      ->capture_default_str();
}

void add_perturbation(CLI::App* cmd, Options& o) {
  cmd->add_option("--epsilon", o.epsilon, "perturbation size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
  add_norm(cmd, o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Colorability of direction sets and finite-precision two-wing models.\n"
               "Exit codes: 0 success, 2 negative verdict, 1 error.\n"
               "KSCOLOR_CATALOG_DIR overrides the builtin catalog directory."};
  app.require_subcommand(1);
  Options o;

  CLI::App* verify = add_command(app, "verify", "decide colorability; -o receives the witness", o, true);
  verify->add_option("--coloring", o.coloring, "check this coloring file instead of solving");

  CLI::App* gen = add_command(app, "gen-rational", "rational directions with denominator <= max-n", o, false);
  gen->add_option("--max-n", o.max_n, "largest denominator")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{10000}))
      ->capture_default_str();

  CLI::App* perturb = add_command(app, "perturb", "rotate each frame by a small rational rotation", o, true);
  add_perturbation(perturb, o);

  CLI::App* fwt = add_command(app, "fwt", "perturb both wings, color, and look for near disagreements", o, true);
  add_perturbation(fwt, o);
  fwt->add_option("--hidden-states", o.hidden_states, "number of hidden states")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000}))
      ->capture_default_str();

  add_command(app, "cnf", "DIMACS export", o, true);

  CLI::App* stats = add_command(app, "stats", "close pairs and color disagreements by radius", o, true);
  stats->add_option("--coloring", o.coloring, "coloring file (default: solver witness)");
  stats->add_option("--radii", o.radii, "comma-separated radii")->delimiter(',')->capture_default_str();
  add_norm(stats, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    if (*verify) return cmd_verify(o);
    if (*gen) return cmd_gen_rational(o);
    if (*perturb) return cmd_perturb(o);
    if (*fwt) return cmd_fwt(o);
    if (app.got_subcommand("cnf")) return cmd_cnf(o);
    if (*stats) return cmd_stats(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
