// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

// faith: synthesize flow fields, estimate the FOE, run benchmarks and make
// avoidance decisions from the command line.
//
// Exit status: 0 success, 1 usage error, 2 data error (I/O, parse, invalid
// input), 3 method failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "faith/baselines.hpp"
#include "faith/bench.hpp"
#include "faith/error.hpp"
#include "faith/faith.hpp"
#include "faith/flow_model.hpp"
#include "faith/io.hpp"
#include "faith/random.hpp"
#include "faith/ttc.hpp"

namespace {

using namespace faith;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitMethod = 3;

// Failure in a stage, tagged with the exit status it maps to.
struct Failure {
  int status;
  std::string message;
};

[[noreturn]] void fail(int status, std::string message) {
  throw Failure{status, std::move(message)};
}

// Runs `fn`, turning library errors into a Failure with `status`.
template <class F>
auto stage(int status, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    fail(status, e.what());
  }
}

CameraModel load_camera(const std::string& path) {
  if (path.empty()) return CameraModel::dvs240();
  return stage(kExitData, [&] { return read_camera_json(path); });
}

std::vector<double> split_numbers(const std::string& text, std::size_t expected,
                                  const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(kExitUsage, std::string(flag) + ": not a number: '" + item + "'");
    }
  }
  if (out.size() != expected) {
    fail(kExitUsage, std::string(flag) + ": expected " + std::to_string(expected) +
                         " comma-separated numbers");
  }
  return out;
}

NoiseModel noise_preset(const std::string& name) {
  if (name == "none") return {};
  if (name == "aperture") return {1.0, 0.1, 0.0, 0.1, 0};
  fail(kExitUsage, "--noise must be 'none' or 'aperture'");
}

struct NoiseOverrides {
  std::optional<double> aperture, direction, magnitude, outlier;
  void apply(NoiseModel& n) const {
    if (aperture) n.aperture_fraction = *aperture;
    if (direction) n.direction_sigma = *direction;
    if (magnitude) n.magnitude_sigma = *magnitude;
    if (outlier) n.outlier_fraction = *outlier;
  }
};

void add_noise_options(CLI::App* cmd, std::string& preset, NoiseOverrides& o) {
  cmd->add_option("--noise", preset, "Noise preset: none | aperture")->capture_default_str();
  cmd->add_option("--aperture-fraction", o.aperture, "Share of vectors reduced to normal flow");
  cmd->add_option("--direction-sigma", o.direction, "Direction jitter, radians");
  cmd->add_option("--magnitude-sigma", o.magnitude, "Relative magnitude jitter");
  cmd->add_option("--outlier-fraction", o.outlier, "Share of vectors replaced by random flow");
}

std::string fmt(double v) { return format_number(v); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(kExitData, "cannot write " + path);
  out << text;
  if (!out) fail(kExitData, "write failed: " + path);
}

// --- synth -------------------------------------------------------------------

struct SynthArgs {
  std::string camera, out, noise = "none", trajectory, obstacle;
  double course_deg = 0.0, vertical_deg = 0.0, speed = 1.0, t = 0.0;
  double z_min = 1.0, z_max = 10.0;
  double sway_amplitude = 0.0, sway_frequency = 0.0;
  std::size_t n = 1000, obstacle_n = 200;
  std::uint64_t seed = 0;
  NoiseOverrides overrides;
};

int cmd_synth(const SynthArgs& a) {
  const CameraModel cam = load_camera(a.camera);
  NoiseModel noise = noise_preset(a.noise);
  a.overrides.apply(noise);
  noise.seed = derive_seed(a.seed, "noise");
  stage(kExitUsage, [&] { noise.validate(); });

  EgoMotion ego;
  if (!a.trajectory.empty()) {
    const auto traj = stage(kExitData, [&] { return read_trajectory_csv(a.trajectory); });
    ego = stage(kExitData, [&] { return ego_at(traj, a.t); });
  } else {
    ego = ego_for_course(a.course_deg, a.vertical_deg, a.speed);
    ego = SwayProfile{a.sway_amplitude, a.sway_frequency}.at(ego, a.t);
  }

  std::vector<ScenePoint> scene = stage(kExitUsage, [&] {
    Rng rng(derive_seed(a.seed, "scene"));
    return random_scene(rng, a.n, cam, a.z_min, a.z_max);
  });
  if (!a.obstacle.empty()) {
    const auto box = split_numbers(a.obstacle, 5, "--obstacle");
    if (!(box[4] > 0.0) || box[2] <= box[0] || box[3] <= box[1]) {
      fail(kExitUsage, "--obstacle needs x0<x1, y0<y1 and Z > 0");
    }
    Rng rng(derive_seed(a.seed, "obstacle"));
    for (std::size_t i = 0; i < a.obstacle_n; ++i) {
      const Point2 px{box[0] + (box[2] - box[0]) * uniform01(rng),
                      box[1] + (box[3] - box[1]) * uniform01(rng)};
      const Point2 xy = normalize(px, cam);
      scene.push_back({xy.x * box[4], xy.y * box[4], box[4]});
    }
  }

  const auto flow = stage(kExitMethod, [&] {
    return synthesize_flow_field(scene, ego, cam, noise, a.t);
  });
  stage(kExitData, [&] { write_flow_csv(std::filesystem::path(a.out), flow); });

  std::cout << "vectors: " << flow.size() << '\n';
  if (ego.W != 0.0) {
    const Point2 foe = ground_truth_foe(ego, cam);
    const CourseAngle c = course_angle(foe, cam);
    std::cout << "foe: " << fmt(foe.x) << ' ' << fmt(foe.y) << '\n';
    std::cout << "course_deg: " << fmt(c.horizontal_deg) << ' ' << fmt(c.vertical_deg) << '\n';
    if (!cam.in_image(foe) || ego.W < 0.0) {
      std::cerr << "warning: the FOE lies outside the image\n";
    }
  } else {
    std::cout << "foe: none\n";
    std::cerr << "warning: lateral motion has no FOE\n";
  }
  return kExitOk;
}

// --- estimate ----------------------------------------------------------------

struct EstimateArgs {
  std::string camera, flow, method = "faith", json;
  std::uint64_t seed = 0;
  std::size_t iterations = 52;
  double bound_margin = 0.5, inlier_dist = 3.0;
  float decay = 0.999f;
};

struct Estimated {
  FoeEstimate est;
  Direction indicator = Direction::None;
};

Estimated run_method(Method m, const std::vector<FlowVector>& flow, const CameraModel& cam,
                     const EstimateArgs& a) {
  Estimated out;
  switch (m) {
    case Method::Faith: {
      FaithConfig cfg;
      cfg.iterations = a.iterations;
      cfg.bound_margin = a.bound_margin;
      cfg.rng_seed = derive_seed(a.seed, "ransac");
      stage(kExitUsage, [&] { cfg.validate(); });
      out.est = stage(kExitMethod, [&] { return estimate_foe(flow, cam, cfg); });
      out.indicator = detect_unbounded(out.est, cam, cfg);
      break;
    }
    case Method::Nesw:
      out.est = stage(kExitMethod, [&] { return estimate_nesw(flow, cam); });
      break;
    case Method::VecInt: {
      VecIntConfig cfg;
      cfg.iterations = a.iterations;
      cfg.inlier_dist = a.inlier_dist;
      cfg.rng_seed = derive_seed(a.seed, "ransac");
      stage(kExitUsage, [&] { cfg.validate(); });
      out.est = stage(kExitMethod, [&] { return estimate_vec_intersections(flow, cam, cfg); });
      break;
    }
    case Method::HalfPlane: {
      ProbabilityMap map = stage(kExitUsage, [&] { return ProbabilityMap::for_camera(cam, a.decay); });
      out.est = stage(kExitMethod, [&] { return estimate_halfplane_map(flow, cam, map); });
      break;
    }
  }
  return out;
}

Method parse_method_or_fail(const std::string& label) {
  const auto m = parse_method(label);
  if (!m) fail(kExitUsage, "unknown method '" + label + "' (faith, nesw, vecint, halfplane)");
  return *m;
}

int cmd_estimate(const EstimateArgs& a) {
  const Method method = parse_method_or_fail(a.method);
  const CameraModel cam = load_camera(a.camera);
  const auto flow = stage(kExitData, [&] { return read_flow_csv(a.flow); });

  const auto start = std::chrono::steady_clock::now();
  const Estimated r = run_method(method, flow, cam, a);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const CourseAngle c = course_angle(r.est.foe, cam);
  std::cout << "method: " << to_string(method) << '\n'
            << "foe: " << fmt(r.est.foe.x) << ' ' << fmt(r.est.foe.y) << '\n'
            << "course_deg: " << fmt(c.horizontal_deg) << ' ' << fmt(c.vertical_deg) << '\n'
            << "score: " << r.est.score << '/' << flow.size() << '\n'
            << "bounded: " << (r.est.bounded ? "true" : "false") << '\n';
  if (method == Method::Faith) std::cout << "indicator: " << to_string(r.indicator) << '\n';
  std::cerr << "wall_time_s: " << fmt(wall) << '\n';

  if (!a.json.empty()) {
    ordered_json j;
    j["method"] = to_string(method);
    j["foe"] = {r.est.foe.x, r.est.foe.y};
    j["course_deg"] = {c.horizontal_deg, c.vertical_deg};
    j["score"] = r.est.score;
    j["n_vectors"] = flow.size();
    j["bounded"] = r.est.bounded;
    if (method == Method::Faith) {
      j["indicator"] = to_string(r.indicator);
      ordered_json region = ordered_json::array();
      for (const Point2& p : r.est.region.vertices) region.push_back({p.x, p.y});
      j["region"] = region;
    }
    write_text(a.json, j.dump(2) + "\n");
  }
  return kExitOk;
}

// --- bench -------------------------------------------------------------------

struct BenchArgs {
  std::string camera, methods = "all", noise = "none", range_out, results, summary;
  double range = 30.0;
  std::size_t trials = 100, n = 1000, repetitions = 5;
  std::uint64_t seed = 0;
  bool sway = false;
  NoiseOverrides overrides;
};

std::vector<Method> parse_methods(const std::string& list) {
  if (list == "all") return all_methods();
  std::vector<Method> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_method_or_fail(item));
  if (out.empty()) fail(kExitUsage, "--methods is empty");
  return out;
}

int cmd_bench(const BenchArgs& a) {
  const CameraModel cam = load_camera(a.camera);
  SweepConfig sweep;
  sweep.count = a.trials;
  sweep.seed = a.seed;
  sweep.sway = a.sway;
  sweep.n_vectors = a.n;
  sweep.methods = parse_methods(a.methods);
  sweep.noise = noise_preset(a.noise);
  a.overrides.apply(sweep.noise);
  stage(kExitUsage, [&] { sweep.noise.validate(); });
  if (!a.range_out.empty()) {
    const auto colon = a.range_out.find(':');
    if (colon == std::string::npos) fail(kExitUsage, "--range-out expects lo:hi");
    const auto lo = split_numbers(a.range_out.substr(0, colon), 1, "--range-out");
    const auto hi = split_numbers(a.range_out.substr(colon + 1), 1, "--range-out");
    sweep.min_deg = lo[0];
    sweep.max_deg = hi[0];
  } else {
    sweep.min_deg = -a.range;
    sweep.max_deg = a.range;
  }
  const auto specs = stage(kExitUsage, [&] { return sweep_trajectories(sweep); });

  RunOptions opts;
  opts.repetitions = a.repetitions;
  std::vector<TrialResult> results;
  std::size_t failures = 0;
  for (const TrialSpec& spec : specs) {
    for (TrialResult& r : run_trial(spec, cam, opts)) {
      if (!r.ok) {
        ++failures;
        std::cerr << "trial " << r.trial_id << " " << to_string(r.method) << " failed: "
                  << r.error << '\n';
      }
      results.push_back(std::move(r));
    }
  }

  std::ostringstream results_csv;
  write_results_csv(results_csv, results);
  if (!a.results.empty()) write_text(a.results, results_csv.str());

  const auto summary = stage(kExitMethod, [&] { return summarize(results); });
  std::ostringstream summary_csv;
  write_summary_csv(summary_csv, summary);
  if (!a.summary.empty()) write_text(a.summary, summary_csv.str());

  std::cout << summary_csv.str();
  for (const MethodSummary& s : summary.methods) {
    if (s.method == Method::Faith && s.indicator_trials > 0) {
      std::cout << "faith_indicator_correct: " << s.indicator_correct << '/'
                << s.indicator_trials << '\n';
    }
  }
  std::cout << "trials: " << summary.trial_count << " failures: " << failures << '\n';
  return failures == 0 ? kExitOk : kExitMethod;
}

// --- avoid -------------------------------------------------------------------

struct AvoidArgs {
  std::string camera, flow, foe, method = "faith", out;
  std::uint64_t seed = 0;
  DbscanParams dbscan;
  double ttc_threshold = 3.0;
};

ordered_json cluster_json(const Cluster& c) {
  ordered_json j;
  j["id"] = c.id;
  j["size"] = c.members.size();
  j["mean_ttc"] = c.mean_ttc;
  j["bbox"] = {c.bbox_min.x, c.bbox_min.y, c.bbox_max.x, c.bbox_max.y};
  return j;
}

int cmd_avoid(const AvoidArgs& a) {
  const CameraModel cam = load_camera(a.camera);
  stage(kExitUsage, [&] { a.dbscan.validate(); });
  if (!(a.ttc_threshold >= 0.0)) fail(kExitUsage, "--ttc-threshold must be >= 0");
  const auto flow = stage(kExitData, [&] { return read_flow_csv(a.flow); });

  Point2 foe;
  std::string source;
  if (!a.foe.empty()) {
    const auto xy = split_numbers(a.foe, 2, "--foe");
    foe = {xy[0], xy[1]};
    source = "given";
  } else {
    EstimateArgs ea;
    ea.seed = a.seed;
    const Method m = parse_method_or_fail(a.method);
    foe = run_method(m, flow, cam, ea).est.foe;
    source = to_string(m);
  }

  const auto samples = stage(kExitMethod, [&] { return compute_ttc(flow, foe, a.dbscan.ttc_clip); });
  const auto features = stage(kExitMethod, [&] { return build_features(samples, cam); });
  const DbscanResult clustering = dbscan(features, a.dbscan);
  const auto clusters = summarize_clusters(samples, clustering);

  ordered_json j;
  j["foe"] = {foe.x, foe.y};
  j["foe_source"] = source;
  j["samples"] = samples.size();
  j["noise_points"] = clustering.noise.size();
  ordered_json cl = ordered_json::array();
  for (const Cluster& c : clusters) cl.push_back(cluster_json(c));
  j["clusters"] = cl;
  ordered_json d;
  if (clusters.empty()) {
    d["avoid"] = false;
    d["roll_sign"] = to_string(RollSign::None);
    d["duration_s"] = 0.0;
    d["foe_in_bbox"] = false;
    d["obstacle"] = nullptr;
  } else {
    const AvoidanceDecision dec = decide_avoidance(clusters, foe, a.ttc_threshold);
    d["avoid"] = dec.avoid;
    d["roll_sign"] = to_string(dec.roll_sign);
    d["duration_s"] = dec.duration;
    d["foe_in_bbox"] = dec.foe_in_bbox;
    d["obstacle"] = cluster_json(dec.obstacle);
  }
  d["ttc_threshold"] = a.ttc_threshold;
  j["decision"] = d;

  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!a.out.empty()) write_text(a.out, text);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FOE estimation from sparse optic flow"};
  app.require_subcommand(1);

  SynthArgs sa;
  CLI::App* synth = app.add_subcommand("synth", "Write a synthetic flow field");
  synth->add_option("--camera", sa.camera, "Camera JSON (default 240x180, +-30 deg)");
  synth->add_option("--out", sa.out, "Output flow CSV")->required();
  synth->add_option("--course-deg", sa.course_deg, "Horizontal course angle")->capture_default_str();
  synth->add_option("--vertical-deg", sa.vertical_deg, "Vertical course angle")->capture_default_str();
  synth->add_option("--speed", sa.speed, "Forward speed, m/s")->capture_default_str();
  synth->add_option("--n", sa.n, "Scene points")->capture_default_str();
  synth->add_option("--seed", sa.seed, "Master seed")->capture_default_str();
  synth->add_option("--z-min", sa.z_min, "Nearest scene depth, m")->capture_default_str();
  synth->add_option("--z-max", sa.z_max, "Farthest scene depth, m")->capture_default_str();
  synth->add_option("--t", sa.t, "Snapshot time, s")->capture_default_str();
  synth->add_option("--sway-amplitude", sa.sway_amplitude, "Lateral sway amplitude, m/s");
  synth->add_option("--sway-frequency", sa.sway_frequency, "Lateral sway frequency, Hz");
  synth->add_option("--trajectory", sa.trajectory, "Ego-motion CSV t,U,V,W,A,B,C (sampled at --t)");
  synth->add_option("--obstacle", sa.obstacle, "Extra points in pixel box x0,y0,x1,y1 at depth Z");
  synth->add_option("--obstacle-n", sa.obstacle_n, "Points in the obstacle box")->capture_default_str();
  add_noise_options(synth, sa.noise, sa.overrides);

  EstimateArgs ea;
  CLI::App* estimate = app.add_subcommand("estimate", "Estimate the FOE of a flow CSV");
  estimate->add_option("--flow", ea.flow, "Flow CSV")->required();
  estimate->add_option("--camera", ea.camera, "Camera JSON");
  estimate->add_option("--method", ea.method, "faith | nesw | vecint | halfplane")->capture_default_str();
  estimate->add_option("--seed", ea.seed, "Master seed")->capture_default_str();
  estimate->add_option("--iterations", ea.iterations, "RANSAC iterations")->capture_default_str();
  estimate->add_option("--bound-margin", ea.bound_margin, "FAITH search margin")->capture_default_str();
  estimate->add_option("--inlier-dist", ea.inlier_dist, "Vec-intersection inlier distance, px")->capture_default_str();
  estimate->add_option("--decay", ea.decay, "Probability map decay")->capture_default_str();
  estimate->add_option("--json", ea.json, "Write the estimate as JSON");

  BenchArgs ba;
  CLI::App* bench = app.add_subcommand("bench", "Run a trajectory sweep benchmark");
  bench->add_option("--camera", ba.camera, "Camera JSON");
  bench->add_option("--trials", ba.trials, "Number of trajectories")->capture_default_str();
  auto* range = bench->add_option("--range", ba.range, "Sweep courses over [-R, R] degrees")->capture_default_str();
  bench->add_option("--range-out", ba.range_out, "Sweep courses over lo:hi degrees")->excludes(range);
  bench->add_option("--methods", ba.methods, "all or a comma-separated list")->capture_default_str();
  bench->add_option("--n", ba.n, "Scene points per trial")->capture_default_str();
  bench->add_option("--seed", ba.seed, "Master seed")->capture_default_str();
  bench->add_option("--repetitions", ba.repetitions, "Timed repetitions per method")->capture_default_str();
  bench->add_flag("--sway", ba.sway, "Sinusoidal lateral sway");
  bench->add_option("--results", ba.results, "Per-trial results CSV");
  bench->add_option("--summary", ba.summary, "Summary CSV");
  add_noise_options(bench, ba.noise, ba.overrides);

  AvoidArgs aa;
  CLI::App* avoid = app.add_subcommand("avoid", "Cluster TTC and decide on an avoidance roll");
  avoid->add_option("--flow", aa.flow, "Flow CSV")->required();
  avoid->add_option("--camera", aa.camera, "Camera JSON");
  auto* foe = avoid->add_option("--foe", aa.foe, "FOE pixel x,y (otherwise estimated)");
  avoid->add_option("--method", aa.method, "Estimator when --foe is absent")->excludes(foe)->capture_default_str();
  avoid->add_option("--seed", aa.seed, "Master seed")->capture_default_str();
  avoid->add_option("--eps", aa.dbscan.eps, "DBSCAN radius")->capture_default_str();
  avoid->add_option("--min-pts", aa.dbscan.min_pts, "DBSCAN core size")->capture_default_str();
  avoid->add_option("--ttc-clip", aa.dbscan.ttc_clip, "TTC ceiling, s")->capture_default_str();
  avoid->add_option("--ttc-threshold", aa.ttc_threshold, "Avoid below this mean TTC, s")->capture_default_str();
  avoid->add_option("--out", aa.out, "Also write the decision JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (synth->parsed()) return cmd_synth(sa);
    if (estimate->parsed()) return cmd_estimate(ea);
    if (bench->parsed()) return cmd_bench(ba);
    if (avoid->parsed()) return cmd_avoid(aa);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.status;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMethod;
  }
  return kExitUsage;
}
