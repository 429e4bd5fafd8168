// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "faith/flow_model.hpp"
#include "faith/geometry.hpp"

namespace faith {

/// Result shared by every FOE estimator.
struct FoeEstimate {
  Point2 foe;
  std::size_t score = 0;   // supporting vectors (method specific)
  ConvexPolygon region;    // FAITH only: the winning FOE area
  bool bounded = true;     // false when the estimate ran into the search limit
  std::string method;
};

/// Iterations needed to draw an all-inlier sample of size n with probability
/// p when a fraction w of the data are inliers: ceil(log(1-p) / log(1-w^n)).
/// w == 1 gives 1. Throws ErrorCode::Domain outside 0<p<1, 0<w<=1, n>=1.
std::size_t required_iterations(double p, double w, unsigned n);

struct FaithConfig {
  std::size_t iterations = 52;  // required_iterations(0.95, 0.75, 10)
  std::uint64_t rng_seed = 0;
  double bound_margin = 0.5;    // search rectangle grows by this fraction per side
  std::size_t min_vectors = 3;

  void validate() const;
};

/// Per-iteration record, filled only when a trace is requested.
struct FaithIterationTrace {
  bool degenerate = false;      // seed pair left an empty region
  std::vector<double> areas;    // accepted region areas, first entry is the seed region
  ConvexPolygon region;
  Point2 center;
  std::size_t score = 0;
};

struct FaithTrace {
  std::vector<FaithIterationTrace> iterations;
  std::size_t best_iteration = 0;
};

/// Search rectangle: the image grown by `margin` of its size on every side.
ConvexPolygon search_rectangle(const CameraModel& cam, double margin);

/// RANSAC over negative half-planes. Each iteration seeds an FOE area from
/// the search rectangle and two random half-planes, keeps clipping by further
/// random half-planes while the area strictly shrinks, and scores the area's
/// centroid by how many of all N half-planes contain it. The best-scoring
/// area (ties: smaller area, then earlier iteration) gives the estimate.
///
/// Deterministic for a fixed cfg.rng_seed; iteration k draws from its own
/// substream of the seed.
FoeEstimate estimate_foe(std::span<const FlowVector> flow, const CameraModel& cam,
                         const FaithConfig& cfg, FaithTrace* trace = nullptr);

enum class Direction { None, Left, Right, Up, Down };

const char* to_string(Direction d) noexcept;

/// Side through which an unbounded FOE area leaves the search rectangle
/// (image left/right, up = towards row 0). None for a bounded estimate.
Direction detect_unbounded(const FoeEstimate& est, const CameraModel& cam,
                           const FaithConfig& cfg);

}  // namespace faith
