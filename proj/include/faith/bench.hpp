// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "faith/baselines.hpp"
#include "faith/faith.hpp"
#include "faith/flow_model.hpp"

namespace faith {

enum class Method { Faith, Nesw, VecInt, HalfPlane };

const char* to_string(Method m) noexcept;
/// "faith" | "nesw" | "vecint" | "halfplane"; nullopt otherwise.
std::optional<Method> parse_method(std::string_view label) noexcept;
std::vector<Method> all_methods();

struct TrialSpec {
  std::size_t trial_id = 0;
  std::uint64_t scene_seed = 0;
  std::uint64_t ransac_seed = 0;
  NoiseModel noise;
  EgoMotion ego;          // at t = 0; sway is applied on top
  SwayProfile sway;
  double t = 0.0;         // snapshot time
  double course_deg = 0.0;
  std::size_t n_vectors = 1000;
  double z_min = 1.0;
  double z_max = 10.0;
  std::vector<Method> methods;

  EgoMotion ego_at_snapshot() const { return sway.at(ego, t); }
};

struct SweepConfig {
  std::size_t count = 100;
  double min_deg = -30.0;
  double max_deg = 30.0;
  bool sway = false;
  double sway_amplitude = 0.1;  // m/s
  double sway_frequency = 0.5;  // Hz
  std::uint64_t seed = 0;
  NoiseModel noise;             // seed is replaced per trial
  std::size_t n_vectors = 1000;
  std::vector<Method> methods = all_methods();
};

/// Horizontal courses evenly spaced over [min_deg, max_deg] (the midpoint for
/// a single trial), unit forward speed, small random body rates. Sway specs
/// sample the snapshot time uniformly over one sway period. Throws
/// ErrorCode::EmptyRange for count == 0 or an inverted/non-finite range.
std::vector<TrialSpec> sweep_trajectories(const SweepConfig& cfg);

struct RunOptions {
  std::size_t repetitions = 5;  // timing = median over these
  bool warmup = true;
  FaithConfig faith;            // rng_seed replaced by the trial's
  VecIntConfig vecint;          // rng_seed replaced by the trial's
  float map_decay = 0.999f;
};

struct TrialResult {
  std::size_t trial_id = 0;
  Method method = Method::Faith;
  bool ok = false;
  std::string error;
  double angular_error_deg = 0.0;
  double time_per_kvec_s = 0.0;
  std::size_t score = 0;
  bool bounded = true;
  Point2 foe;
  double course_deg = 0.0;
  Direction indicator = Direction::None;  // FAITH only
  Direction expected_indicator = Direction::None;
};

/// Synthesizes the trial's flow once and runs every requested method on it.
/// Estimator errors become failed results instead of exceptions.
std::vector<TrialResult> run_trial(const TrialSpec& spec, const CameraModel& cam,
                                   const RunOptions& opts = {});

/// Side of the image through which the direction of travel leaves the field
/// of view, or None when the FOE lies strictly inside the image.
Direction expected_direction(const EgoMotion& ego, const CameraModel& cam);

struct MethodSummary {
  Method method = Method::Faith;
  std::size_t n = 0;         // completed trials
  std::size_t failures = 0;
  double mean_err_deg = 0.0;
  double std_err_deg = 0.0;  // sample std, 0 when n == 1
  double mean_time_s = 0.0;
  double std_time_s = 0.0;
  double cv_pct = 0.0;       // std / mean of the angular error, percent
  std::size_t indicator_trials = 0;   // trials with an expected side
  std::size_t indicator_correct = 0;
};

struct BenchmarkSummary {
  std::vector<MethodSummary> methods;
  std::size_t trial_count = 0;
};

/// Per-method statistics over completed results. Throws
/// ErrorCode::EmptyResults when nothing completed.
BenchmarkSummary summarize(std::span<const TrialResult> results);

double mean(std::span<const double> xs);
/// n-1 denominator; 0 for fewer than two values.
double sample_std(std::span<const double> xs);
/// sigma / mu in percent; 0 when mu == 0.
double coefficient_of_variation_pct(double mean, double std);
double spearman_rho(std::span<const double> x, std::span<const double> y);

void write_results_csv(std::ostream& os, std::span<const TrialResult> results);
void write_summary_csv(std::ostream& os, const BenchmarkSummary& summary);

}  // namespace faith
