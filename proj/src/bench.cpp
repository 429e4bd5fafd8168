// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

#include "faith/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <ostream>
#include <set>

#include "faith/error.hpp"
#include "faith/io.hpp"
#include "faith/random.hpp"

namespace faith {

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::Faith: return "faith";
    case Method::Nesw: return "nesw";
    case Method::VecInt: return "vecint";
    case Method::HalfPlane: return "halfplane";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view label) noexcept {
  for (Method m : all_methods()) {
    if (label == to_string(m)) return m;
  }
  return std::nullopt;
}

std::vector<Method> all_methods() {
  return {Method::Faith, Method::Nesw, Method::VecInt, Method::HalfPlane};
}

std::vector<TrialSpec> sweep_trajectories(const SweepConfig& cfg) {
  if (cfg.count == 0 || !std::isfinite(cfg.min_deg) || !std::isfinite(cfg.max_deg) ||
      cfg.max_deg < cfg.min_deg) {
    throw Error(ErrorCode::EmptyRange, "trajectory sweep needs count >= 1 and min <= max");
  }
  std::vector<TrialSpec> specs;
  specs.reserve(cfg.count);
  for (std::size_t k = 0; k < cfg.count; ++k) {
    TrialSpec s;
    s.trial_id = k;
    s.course_deg = cfg.count == 1
                       ? 0.5 * (cfg.min_deg + cfg.max_deg)
                       : cfg.min_deg + (cfg.max_deg - cfg.min_deg) * static_cast<double>(k) /
                                           static_cast<double>(cfg.count - 1);
    s.scene_seed = derive_seed(cfg.seed, "scene", k);
    s.ransac_seed = derive_seed(cfg.seed, "ransac", k);
    s.noise = cfg.noise;
    s.noise.seed = derive_seed(cfg.seed, "noise", k);
    s.n_vectors = cfg.n_vectors;
    s.methods = cfg.methods;

    s.ego = ego_for_course(s.course_deg);
    Rng rng(derive_seed(cfg.seed, "trajectory", k));
    s.ego.A = 0.4 * (uniform01(rng) - 0.5);
    s.ego.B = 0.4 * (uniform01(rng) - 0.5);
    s.ego.C = 0.4 * (uniform01(rng) - 0.5);
    const double phase = uniform01(rng);
    if (cfg.sway && cfg.sway_frequency > 0.0) {
      s.sway = {cfg.sway_amplitude, cfg.sway_frequency};
      s.t = phase / cfg.sway_frequency;
    }
    specs.push_back(std::move(s));
  }
  return specs;
}

Direction expected_direction(const EgoMotion& ego, const CameraModel& cam) {
  if (ego.W > 0.0) {
    const Point2 foe = ground_truth_foe(ego, cam);
    // A FOE on the image border already lies outside the field of view.
    if (foe.x > 0.0 && foe.x < cam.width && foe.y > 0.0 && foe.y < cam.height) {
      return Direction::None;
    }
  }
  const double sx = std::abs(ego.U) * cam.fx / (0.5 * cam.width);
  const double sy = std::abs(ego.V) * cam.fy / (0.5 * cam.height);
  if (sx >= sy) return ego.U > 0.0 ? Direction::Right : Direction::Left;
  return ego.V > 0.0 ? Direction::Down : Direction::Up;
}

namespace {

double median_of(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace

std::vector<TrialResult> run_trial(const TrialSpec& spec, const CameraModel& cam,
                                   const RunOptions& opts) {
  const EgoMotion ego = spec.ego_at_snapshot();
  std::vector<TrialResult> results;
  results.reserve(spec.methods.size());

  std::vector<FlowVector> flow;
  std::string synth_error;
  try {
    Rng scene_rng(spec.scene_seed);
    const auto scene = random_scene(scene_rng, spec.n_vectors, cam, spec.z_min, spec.z_max);
    flow = synthesize_flow_field(scene, ego, cam, spec.noise, spec.t);
  } catch (const Error& e) {
    synth_error = e.what();
  }
  const Direction expected = expected_direction(ego, cam);

  FaithConfig faith_cfg = opts.faith;
  faith_cfg.rng_seed = spec.ransac_seed;
  VecIntConfig vecint_cfg = opts.vecint;
  vecint_cfg.rng_seed = spec.ransac_seed;

  for (Method m : spec.methods) {
    TrialResult r;
    r.trial_id = spec.trial_id;
    r.method = m;
    r.course_deg = spec.course_deg;
    r.expected_indicator = expected;
    if (!synth_error.empty()) {
      r.error = synth_error;
      results.push_back(std::move(r));
      continue;
    }

    std::function<FoeEstimate()> run;
    switch (m) {
      case Method::Faith:
        run = [&] { return estimate_foe(flow, cam, faith_cfg); };
        break;
      case Method::Nesw:
        run = [&] { return estimate_nesw(flow, cam); };
        break;
      case Method::VecInt:
        run = [&] { return estimate_vec_intersections(flow, cam, vecint_cfg); };
        break;
      case Method::HalfPlane:
        run = [&] {
          ProbabilityMap map = ProbabilityMap::for_camera(cam, opts.map_decay);
          return estimate_halfplane_map(flow, cam, map);
        };
        break;
    }

    try {
      FoeEstimate est;
      if (opts.warmup) est = run();
      std::vector<double> seconds;
      const std::size_t reps = std::max<std::size_t>(opts.repetitions, 1);
      for (std::size_t k = 0; k < reps; ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        est = run();
        const auto t1 = std::chrono::steady_clock::now();
        seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
      }
      r.ok = true;
      r.foe = est.foe;
      r.score = est.score;
      r.bounded = est.bounded;
      r.angular_error_deg = angular_error_deg(est.foe, ego, cam);
      r.time_per_kvec_s = std::max(median_of(seconds), 1e-12) * 1000.0 /
                          static_cast<double>(flow.size());
      if (m == Method::Faith) r.indicator = detect_unbounded(est, cam, faith_cfg);
    } catch (const Error& e) {
      r.ok = false;
      r.error = e.what();
    }
    results.push_back(std::move(r));
  }
  return results;
}

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_std(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double mu = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double coefficient_of_variation_pct(double mu, double sigma) {
  return mu == 0.0 ? 0.0 : 100.0 * sigma / mu;
}

namespace {

std::vector<double> ranks(std::span<const double> xs) {
  std::vector<std::size_t> idx(xs.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return xs[a] < xs[b]; });
  std::vector<double> r(xs.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && xs[idx[j + 1]] == xs[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

double spearman_rho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::InsufficientData, "Spearman correlation needs two equal series of length >= 2");
  }
  const auto rx = ranks(x), ry = ranks(y);
  const double mx = mean(rx), my = mean(ry);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

BenchmarkSummary summarize(std::span<const TrialResult> results) {
  BenchmarkSummary summary;
  std::set<std::size_t> trials;
  bool any_ok = false;
  for (const TrialResult& r : results) {
    trials.insert(r.trial_id);
    any_ok = any_ok || r.ok;
  }
  if (!any_ok) throw Error(ErrorCode::EmptyResults, "no completed trial results to summarize");
  summary.trial_count = trials.size();

  for (Method m : all_methods()) {
    MethodSummary s;
    s.method = m;
    std::vector<double> errs, times;
    bool present = false;
    for (const TrialResult& r : results) {
      if (r.method != m) continue;
      present = true;
      if (!r.ok) {
        ++s.failures;
        continue;
      }
      errs.push_back(r.angular_error_deg);
      times.push_back(r.time_per_kvec_s);
      if (m == Method::Faith && r.expected_indicator != Direction::None) {
        ++s.indicator_trials;
        s.indicator_correct += r.indicator == r.expected_indicator;
      }
    }
    if (!present) continue;
    s.n = errs.size();
    s.mean_err_deg = mean(errs);
    s.std_err_deg = sample_std(errs);
    s.mean_time_s = mean(times);
    s.std_time_s = sample_std(times);
    s.cv_pct = coefficient_of_variation_pct(s.mean_err_deg, s.std_err_deg);
    summary.methods.push_back(s);
  }
  return summary;
}

void write_results_csv(std::ostream& os, std::span<const TrialResult> results) {
  os << "trial_id,method,angular_error_deg,time_per_kvec_s,score,bounded\n";
  for (const TrialResult& r : results) {
    os << r.trial_id << ',' << to_string(r.method) << ',';
    if (r.ok) {
      os << format_number(r.angular_error_deg) << ',' << format_number(r.time_per_kvec_s)
         << ',' << r.score << ',' << (r.bounded ? 1 : 0) << '\n';
    } else {
      os << "nan,nan,0,0\n";
    }
  }
}

void write_summary_csv(std::ostream& os, const BenchmarkSummary& summary) {
  os << "method,mean_err_deg,std_err_deg,mean_time_s,std_time_s,cv_pct,n\n";
  for (const MethodSummary& s : summary.methods) {
    os << to_string(s.method) << ',' << format_number(s.mean_err_deg) << ','
       << format_number(s.std_err_deg) << ',' << format_number(s.mean_time_s) << ','
       << format_number(s.std_time_s) << ',' << format_number(s.cv_pct) << ',' << s.n << '\n';
  }
}

}  // namespace faith
