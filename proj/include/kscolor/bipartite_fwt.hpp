#pragma once

// Two-wing deterministic hidden-variable models built from frame functions.
//
// Each hidden state z fixes a response lambda_z for the A wing and mu_z for
// the B wing. A run picks an A frame, a B frame and a z; the A outcome is
// lambda_z(A frame) and the B outcome is mu_z(B frame), so each wing's
// outcome depends only on its own setting and z. The exact agreement
// condition asks that exactly shared lines give equal values on both
// wings; the finite-precision version asks the same of nearly shared lines.

#include <cstdint>
#include <string>
#include <vector>

#include "kscolor/coloring_solver.hpp"
#include "kscolor/geometry.hpp"
#include "kscolor/serialization.hpp"

namespace kscolor {

struct HiddenState {
  FrameFunction a;  // on settings_a
  FrameFunction b;  // on settings_b
};

struct MkcModel {
  DirectionSet settings_a;
  DirectionSet settings_b;
  std::vector<HiddenState> hidden_states;
};

// Builds one hidden state per index from the k-th coloring of each side.
// Throws Error on a count mismatch or an invalid coloring.
MkcModel model_from_colorings(const DirectionSet& ds_a, const DirectionSet& ds_b,
                              const std::vector<Coloring>& colorings_a,
                              const std::vector<Coloring>& colorings_b);

struct ExperimentRun {
  std::size_t a_setting;
  std::size_t b_setting;
  std::size_t z;
  Outcome outcome_f;
  Outcome outcome_g;
};

// The full product of A frames x B frames x hidden states.
// Throws Error if the product exceeds max_runs.
std::vector<ExperimentRun> run_experiment_grid(const MkcModel& model,
                                               std::size_t max_runs = 10'000'000);

struct NatureViolation {
  std::size_t a_frame, b_frame;
  std::size_t i, j;  // slots within the frames
  std::size_t z;
  std::uint8_t f_value, g_value;
};

// Every (A frame, B frame, slots, z) where an exactly shared line gets
// different values on the two wings. Empty means exact agreement holds.
std::vector<NatureViolation> check_nature(const MkcModel& model);

enum class WitnessScope { CrossWings, WithinA };

struct NatureWitness {
  WitnessScope scope;
  std::size_t z;
  // For CrossWings b_frame indexes settings_b; for WithinA it indexes settings_a.
  std::size_t a_frame, b_frame;
  std::size_t i, j;
  std::size_t a_point, b_point;
  double distance;
  std::uint8_t f_value, g_value;
};

// Distinct-but-close line pairs (distance < epsilon) whose values differ.
// Scans A-B pairs and, when within_a is set, pairs inside settings_a.
// Sorted by distance, then z, scope, and indices.
std::vector<NatureWitness> find_nature_fp_witness(const MkcModel& model, double epsilon,
                                                  bool within_a = true,
                                                  ProjectorNorm norm = ProjectorNorm::Operator);

// For settings_a == settings_b: the pointwise merge of both wings' values
// for hidden state z, as a frame function on settings_a. Throws Error if
// the sets differ or the merged values are not noncontextual.
FrameFunction merged_frame_function(const MkcModel& model, std::size_t z);

struct StatsRow {
  double radius;
  std::uint64_t pairs;
  std::uint64_t disagreements;
  double fraction;
};

// For each radius: point pairs closer than it, and how many of those the
// coloring separates.
std::vector<StatsRow> discontinuity_stats(const DirectionSet& ds, const Coloring& c,
                                          const std::vector<double>& radii,
                                          ProjectorNorm norm = ProjectorNorm::Operator);

// Header "radius,pairs,disagreements,fraction".
std::string stats_to_csv(const std::vector<StatsRow>& rows);

Json witnesses_to_json(const MkcModel& model, const std::vector<NatureWitness>& witnesses);

// The whole pipeline for one seed: complete the source's orthogonal pairs
// into frames, perturb it independently for each wing, color both sides,
// add random extra hidden states, then look for exact and near violations
// at radius 2*epsilon.
struct FwtConfig {
  double epsilon = 0.02;
  std::uint64_t seed = 1;
  std::size_t hidden_states = 4;
  ProjectorNorm norm = ProjectorNorm::Operator;
};

struct FwtReport {
  std::string source_name;
  std::size_t source_points = 0;
  std::size_t completed_points = 0;
  std::size_t completed_frames = 0;
  FwtConfig config;
  double radius = 0.0;
  MkcModel model;
  std::vector<NatureViolation> nature_violations;
  std::vector<NatureWitness> witnesses;
  std::vector<std::size_t> witnesses_per_state;

  bool nature_holds() const { return nature_violations.empty(); }
  // At least one witness for every hidden state.
  bool nature_fp_violated() const;
};

FwtReport run_fwt(const DirectionSet& source, const FwtConfig& config);

Json fwt_report_to_json(const FwtReport& report, std::size_t max_witnesses = 50);

}  // namespace kscolor
