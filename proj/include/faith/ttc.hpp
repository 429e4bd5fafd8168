// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "faith/flow_model.hpp"
#include "faith/geometry.hpp"

namespace faith {

struct TtcSample {
  std::size_t source = 0;  // index into the input flow list
  Point2 pos;
  double ttc = 0.0;         // seconds
  double divergence = 0.0;  // 1/s
  bool clipped = false;
};

/// Time to contact per vector from its flow and the FOE. Divergence is the flow
/// component over the offset from the FOE, using whichever axis has the larger
/// offset. ttc = 1/divergence, capped at `clip`; non-positive divergence maps
/// to `clip`. Vectors exactly on the FOE are dropped.
std::vector<TtcSample> compute_ttc(std::span<const FlowVector> flow, Point2 foe,
                                   double clip);

using Feature = std::array<double, 3>;

/// (x / width, y / height, z-scored ttc). Zero TTC variance gives a zero TTC
/// feature. Throws ErrorCode::InsufficientData below two samples.
std::vector<Feature> build_features(std::span<const TtcSample> samples,
                                    const CameraModel& cam);

struct DbscanParams {
  double eps = 0.2;
  std::size_t min_pts = 20;
  double ttc_clip = 10.0;

  void validate() const;
};

inline constexpr int kNoise = -1;

struct DbscanResult {
  std::vector<int> labels;                        // cluster id or kNoise, per point
  std::vector<std::vector<std::size_t>> clusters; // member indices, ascending
  std::vector<std::size_t> noise;
};

/// DBSCAN with the Euclidean metric. A point is core when its closed
/// eps-neighbourhood (itself included) holds at least min_pts points. Points
/// are visited in input order; a border point reachable from several clusters
/// joins the first one discovered.
DbscanResult dbscan(std::span<const Feature> features, const DbscanParams& params);

struct Cluster {
  int id = 0;
  std::vector<std::size_t> members;  // indices into the sample list
  double mean_ttc = 0.0;
  Point2 bbox_min;
  Point2 bbox_max;

  Point2 center() const { return 0.5 * (bbox_min + bbox_max); }
  bool bbox_contains(Point2 p) const {
    return p.x >= bbox_min.x && p.x <= bbox_max.x && p.y >= bbox_min.y &&
           p.y <= bbox_max.y;
  }
};

std::vector<Cluster> summarize_clusters(std::span<const TtcSample> samples,
                                        const DbscanResult& result);

enum class RollSign { None, Left, Right };

const char* to_string(RollSign r) noexcept;

inline constexpr double kRollDuration = 1.5;  // seconds

struct AvoidanceDecision {
  bool avoid = false;
  RollSign roll_sign = RollSign::None;
  double duration = 0.0;
  Cluster obstacle;      // lowest mean TTC
  bool foe_in_bbox = false;
};

/// Avoid when the FOE lies in the lowest-TTC cluster's bounding box and that
/// cluster's mean TTC is below the threshold. The roll goes towards the cluster
/// with the highest mean TTC: right when its bbox centre is right of the FOE,
/// otherwise left. Throws ErrorCode::NoClusters on an empty list.
AvoidanceDecision decide_avoidance(std::span<const Cluster> clusters, Point2 foe,
                                   double ttc_threshold);

}  // namespace faith
