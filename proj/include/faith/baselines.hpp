// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "faith/faith.hpp"
#include "faith/flow_model.hpp"

namespace faith {

/// Direction-counting estimator. For every integer column the number of
/// vectors whose horizontal flow disagrees with expansion from that column is
/// counted; the FOE column is the centre of the run of minimal-count columns
/// (likewise for rows). If a minimal run touches the image border the estimate
/// is pinned to that border and flagged unbounded. Score is N minus the total
/// disagreement count.
FoeEstimate estimate_nesw(std::span<const FlowVector> flow, const CameraModel& cam);

struct VecIntConfig {
  std::size_t iterations = 52;
  double inlier_dist = 3.0;  // pixels
  std::uint64_t rng_seed = 0;

  void validate() const;
};

/// Line-intersection RANSAC: candidate = intersection of the flow lines of two
/// random vectors, inliers = vectors whose flow line passes within
/// inlier_dist. Parallel pairs consume an iteration; if every draw was
/// parallel, throws ErrorCode::DegenerateField.
FoeEstimate estimate_vec_intersections(std::span<const FlowVector> flow,
                                       const CameraModel& cam,
                                       const VecIntConfig& cfg);

/// Dense per-pixel accumulator, pixel (col, row) sits at image point (col, row).
class ProbabilityMap {
 public:
  ProbabilityMap(std::size_t width, std::size_t height, float decay = 0.999f);
  /// Map sized to the camera's (truncated) pixel dimensions.
  static ProbabilityMap for_camera(const CameraModel& cam, float decay = 0.999f);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  float decay() const { return decay_; }
  float at(std::size_t col, std::size_t row) const { return values_[row * width_ + col]; }
  std::span<const float> values() const { return values_; }
  void reset();

  /// +1 inside the half-plane, times decay everywhere else.
  void update(const HalfPlane& h);
  /// Row-major index of the maximum; ties keep the smallest index.
  std::size_t argmax() const;

 private:
  std::size_t width_;
  std::size_t height_;
  float decay_;
  std::vector<float> values_;
};

/// Feeds every vector (in timestamp order, stable) into the map and returns
/// its argmax pixel. The map keeps its state between calls. Throws
/// ErrorCode::DimensionMismatch if the map does not match the camera.
FoeEstimate estimate_halfplane_map(std::span<const FlowVector> flow,
                                   const CameraModel& cam, ProbabilityMap& map);

}  // namespace faith
