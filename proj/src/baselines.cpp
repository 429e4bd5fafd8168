// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

#include "faith/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "faith/error.hpp"
#include "faith/kernels.hpp"
#include "faith/random.hpp"

namespace faith {

// ---------------------------------------------------------------------------
// NESW

namespace {

struct AxisScan {
  double estimate = 0.0;
  bool pinned = false;
};

// Scans integer positions 0..extent and returns the centre of the first run
// of minimal disagreement, or the border when that run reaches it.
AxisScan scan_axis(const std::vector<double>& pos, const std::vector<double>& vel,
                   std::size_t extent) {
  const auto& k = simd::kernels();
  std::vector<std::size_t> cost(extent + 1);
  for (std::size_t c = 0; c <= extent; ++c) {
    cost[c] = k.count_axis_disagreements(pos.data(), vel.data(), pos.size(),
                                         static_cast<double>(c));
  }
  const std::size_t best = *std::min_element(cost.begin(), cost.end());
  std::size_t start = 0;
  while (cost[start] != best) ++start;
  std::size_t end = start;
  while (end + 1 <= extent && cost[end + 1] == best) ++end;

  AxisScan out;
  if (start == 0 && end == extent) {
    out.estimate = 0.5 * static_cast<double>(extent);
    out.pinned = true;
  } else if (start == 0) {
    out.estimate = 0.0;
    out.pinned = true;
  } else if (end == extent) {
    out.estimate = static_cast<double>(extent);
    out.pinned = true;
  } else {
    out.estimate = 0.5 * static_cast<double>(start + end);
  }
  return out;
}

}  // namespace

FoeEstimate estimate_nesw(std::span<const FlowVector> flow, const CameraModel& cam) {
  cam.validate();
  if (flow.size() < 4) {
    throw Error(ErrorCode::TooFewVectors,
                "NESW needs at least 4 flow vectors, got " + std::to_string(flow.size()));
  }
  std::vector<double> xs, ys, us, vs;
  xs.reserve(flow.size()); ys.reserve(flow.size());
  us.reserve(flow.size()); vs.reserve(flow.size());
  for (const FlowVector& f : flow) {
    xs.push_back(f.pos.x); ys.push_back(f.pos.y);
    us.push_back(f.u); vs.push_back(f.v);
  }
  const AxisScan col = scan_axis(xs, us, static_cast<std::size_t>(cam.width));
  const AxisScan row = scan_axis(ys, vs, static_cast<std::size_t>(cam.height));

  FoeEstimate est;
  est.foe = {col.estimate, row.estimate};
  est.bounded = !col.pinned && !row.pinned;
  est.method = "nesw";
  for (const FlowVector& f : flow) {
    const bool bad_x = (f.pos.x < est.foe.x && f.u > 0.0) || (f.pos.x > est.foe.x && f.u < 0.0);
    const bool bad_y = (f.pos.y < est.foe.y && f.v > 0.0) || (f.pos.y > est.foe.y && f.v < 0.0);
    est.score += !bad_x && !bad_y;
  }
  return est;
}

// ---------------------------------------------------------------------------
// Vector intersections

void VecIntConfig::validate() const {
  if (iterations < 1 || !(inlier_dist > 0.0)) {
    throw Error(ErrorCode::Domain, "vec-intersections config needs iterations >= 1 and inlier_dist > 0");
  }
}

FoeEstimate estimate_vec_intersections(std::span<const FlowVector> flow,
                                       const CameraModel& cam,
                                       const VecIntConfig& cfg) {
  cfg.validate();
  cam.validate();
  const std::size_t n = flow.size();
  if (n < 2) {
    throw Error(ErrorCode::TooFewVectors,
                "vector intersections need at least 2 flow vectors, got " + std::to_string(n));
  }
  std::vector<Point2> pos, dir;
  pos.reserve(n);
  dir.reserve(n);
  for (const FlowVector& f : flow) {
    const HalfPlane h = negative_half_plane(f);  // validates the magnitude
    pos.push_back(f.pos);
    dir.push_back(h.normal);
  }
  const simd::AffineSet lines = simd::AffineSet::from_lines(pos, dir);

  bool found = false;
  FoeEstimate est;
  est.method = "vecint";
  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    Rng rng(derive_seed(cfg.rng_seed, "vecint-iteration", it));
    const std::size_t i = uniform_index(rng, n);
    std::size_t j = uniform_index(rng, n - 1);
    if (j >= i) ++j;
    const double denom = cross(dir[i], dir[j]);
    if (std::abs(denom) < 1e-9) continue;
    const double t = cross(pos[j] - pos[i], dir[j]) / denom;
    const Point2 candidate = pos[i] + t * dir[i];
    const std::size_t inliers = simd::count_abs_at_most(lines, candidate, cfg.inlier_dist);
    if (!found || inliers > est.score) {
      found = true;
      est.foe = candidate;
      est.score = inliers;
    }
  }
  if (!found) {
    throw Error(ErrorCode::DegenerateField, "every sampled pair of flow lines was parallel");
  }
  return est;
}

// ---------------------------------------------------------------------------
// Half-plane probability map

ProbabilityMap::ProbabilityMap(std::size_t width, std::size_t height, float decay)
    : width_(width), height_(height), decay_(decay), values_(width * height, 0.0f) {
  if (width == 0 || height == 0 || !(decay > 0.0f && decay <= 1.0f)) {
    throw Error(ErrorCode::Domain, "probability map needs non-zero size and decay in (0, 1]");
  }
}

ProbabilityMap ProbabilityMap::for_camera(const CameraModel& cam, float decay) {
  return ProbabilityMap(static_cast<std::size_t>(cam.width),
                        static_cast<std::size_t>(cam.height), decay);
}

void ProbabilityMap::reset() { std::fill(values_.begin(), values_.end(), 0.0f); }

void ProbabilityMap::update(const HalfPlane& h) {
  const auto row_update = simd::kernels().map_update_row;
  const float step = static_cast<float>(h.normal.x);
  const double base_x = -h.anchor.x * h.normal.x;
  for (std::size_t r = 0; r < height_; ++r) {
    const double base = base_x + (static_cast<double>(r) - h.anchor.y) * h.normal.y;
    row_update(values_.data() + r * width_, width_, static_cast<float>(base), step, decay_);
  }
}

std::size_t ProbabilityMap::argmax() const {
  return static_cast<std::size_t>(
      std::max_element(values_.begin(), values_.end()) - values_.begin());
}

FoeEstimate estimate_halfplane_map(std::span<const FlowVector> flow,
                                   const CameraModel& cam, ProbabilityMap& map) {
  cam.validate();
  if (flow.empty()) {
    throw Error(ErrorCode::TooFewVectors, "half-plane map needs at least 1 flow vector");
  }
  if (map.width() != static_cast<std::size_t>(cam.width) ||
      map.height() != static_cast<std::size_t>(cam.height)) {
    throw Error(ErrorCode::DimensionMismatch,
                "probability map is " + std::to_string(map.width()) + "x" +
                    std::to_string(map.height()) + " but the camera is " +
                    std::to_string(static_cast<std::size_t>(cam.width)) + "x" +
                    std::to_string(static_cast<std::size_t>(cam.height)));
  }
  std::vector<HalfPlane> planes;
  planes.reserve(flow.size());
  for (const FlowVector& f : flow) planes.push_back(negative_half_plane(f));

  std::vector<std::size_t> order(flow.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return flow[a].t < flow[b].t; });
  for (std::size_t i : order) map.update(planes[i]);

  const std::size_t idx = map.argmax();
  FoeEstimate est;
  est.foe = {static_cast<double>(idx % map.width()), static_cast<double>(idx / map.width())};
  est.score = simd::count_at_most(simd::AffineSet::from_half_planes(planes), est.foe, 1e-6);
  est.method = "halfplane";
  return est;
}

}  // namespace faith
