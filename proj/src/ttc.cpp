// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

#include "faith/ttc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>

#include "faith/error.hpp"

namespace faith {

std::vector<TtcSample> compute_ttc(std::span<const FlowVector> flow, Point2 foe,
                                   double clip) {
  if (!std::isfinite(foe.x) || !std::isfinite(foe.y)) {
    throw Error(ErrorCode::Domain, "TTC needs a finite FOE");
  }
  if (!(clip > 0.0)) throw Error(ErrorCode::Domain, "TTC clip must be positive");

  std::vector<TtcSample> out;
  out.reserve(flow.size());
  for (std::size_t i = 0; i < flow.size(); ++i) {
    const FlowVector& f = flow[i];
    const double dx = f.pos.x - foe.x;
    const double dy = f.pos.y - foe.y;
    if (dx == 0.0 && dy == 0.0) continue;
    const double div = std::abs(dx) >= std::abs(dy) ? f.u / dx : f.v / dy;

    TtcSample s;
    s.source = i;
    s.pos = f.pos;
    s.divergence = div;
    if (div > 0.0 && 1.0 / div <= clip) {
      s.ttc = 1.0 / div;
    } else {
      s.ttc = clip;
      s.clipped = true;
    }
    out.push_back(s);
  }
  return out;
}

std::vector<Feature> build_features(std::span<const TtcSample> samples,
                                    const CameraModel& cam) {
  if (samples.size() < 2) {
    throw Error(ErrorCode::InsufficientData,
                "clustering needs at least 2 TTC samples, got " + std::to_string(samples.size()));
  }
  double sum = 0.0;
  for (const TtcSample& s : samples) sum += s.ttc;
  const double mu = sum / static_cast<double>(samples.size());
  double ss = 0.0;
  for (const TtcSample& s : samples) ss += (s.ttc - mu) * (s.ttc - mu);
  const double sigma = std::sqrt(ss / static_cast<double>(samples.size()));

  std::vector<Feature> out;
  out.reserve(samples.size());
  for (const TtcSample& s : samples) {
    out.push_back({s.pos.x / cam.width, s.pos.y / cam.height,
                   sigma > 0.0 ? (s.ttc - mu) / sigma : 0.0});
  }
  return out;
}

void DbscanParams::validate() const {
  if (!(eps > 0.0) || min_pts < 1 || !(ttc_clip > 0.0)) {
    throw Error(ErrorCode::Domain, "DBSCAN needs eps > 0, min_pts >= 1, ttc_clip > 0");
  }
}

namespace {

// Uniform grid with cell size eps; a neighbourhood query only visits the 27
// surrounding cells.
class GridIndex {
 public:
  GridIndex(std::span<const Feature> pts, double eps) : pts_(pts), eps_(eps) {
    for (std::size_t i = 0; i < pts.size(); ++i) cells_[key(cell_of(pts[i]))].push_back(i);
  }

  void neighbors(std::size_t i, std::vector<std::size_t>& out) const {
    out.clear();
    const auto c = cell_of(pts_[i]);
    const double eps2 = eps_ * eps_;
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dz = -1; dz <= 1; ++dz) {
          const auto it = cells_.find(key({c[0] + dx, c[1] + dy, c[2] + dz}));
          if (it == cells_.end()) continue;
          for (std::size_t j : it->second) {
            double d2 = 0.0;
            for (int k = 0; k < 3; ++k) {
              const double d = pts_[i][k] - pts_[j][k];
              d2 += d * d;
            }
            if (d2 <= eps2) out.push_back(j);
          }
        }
  }

 private:
  using Cell = std::array<std::int64_t, 3>;

  Cell cell_of(const Feature& p) const {
    return {static_cast<std::int64_t>(std::floor(p[0] / eps_)),
            static_cast<std::int64_t>(std::floor(p[1] / eps_)),
            static_cast<std::int64_t>(std::floor(p[2] / eps_))};
  }
  static std::uint64_t key(const Cell& c) {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::int64_t v : c) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  std::span<const Feature> pts_;
  double eps_;
  // Hash collisions only add candidates; the distance test filters them.
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;
};

}  // namespace

DbscanResult dbscan(std::span<const Feature> features, const DbscanParams& params) {
  params.validate();
  constexpr int kUnvisited = -2;
  const std::size_t n = features.size();
  DbscanResult result;
  result.labels.assign(n, kUnvisited);
  if (n == 0) return result;

  const GridIndex index(features, params.eps);
  std::vector<std::size_t> nb, nb2;
  std::deque<std::size_t> queue;
  int next_id = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (result.labels[i] != kUnvisited) continue;
    index.neighbors(i, nb);
    if (nb.size() < params.min_pts) {
      result.labels[i] = kNoise;
      continue;
    }
    const int id = next_id++;
    result.labels[i] = id;
    queue.assign(nb.begin(), nb.end());
    while (!queue.empty()) {
      const std::size_t q = queue.front();
      queue.pop_front();
      if (result.labels[q] == kNoise) result.labels[q] = id;  // border point
      if (result.labels[q] != kUnvisited) continue;
      result.labels[q] = id;
      index.neighbors(q, nb2);
      if (nb2.size() >= params.min_pts) queue.insert(queue.end(), nb2.begin(), nb2.end());
    }
  }

  result.clusters.resize(static_cast<std::size_t>(next_id));
  for (std::size_t i = 0; i < n; ++i) {
    if (result.labels[i] == kNoise) {
      result.noise.push_back(i);
    } else {
      result.clusters[static_cast<std::size_t>(result.labels[i])].push_back(i);
    }
  }
  return result;
}

std::vector<Cluster> summarize_clusters(std::span<const TtcSample> samples,
                                        const DbscanResult& result) {
  std::vector<Cluster> out;
  out.reserve(result.clusters.size());
  for (std::size_t c = 0; c < result.clusters.size(); ++c) {
    const auto& members = result.clusters[c];
    if (members.empty()) continue;
    Cluster cl;
    cl.id = static_cast<int>(c);
    cl.members = members;
    cl.bbox_min = cl.bbox_max = samples[members.front()].pos;
    double sum = 0.0;
    for (std::size_t m : members) {
      const Point2 p = samples[m].pos;
      cl.bbox_min = {std::min(cl.bbox_min.x, p.x), std::min(cl.bbox_min.y, p.y)};
      cl.bbox_max = {std::max(cl.bbox_max.x, p.x), std::max(cl.bbox_max.y, p.y)};
      sum += samples[m].ttc;
    }
    cl.mean_ttc = sum / static_cast<double>(members.size());
    out.push_back(std::move(cl));
  }
  return out;
}

const char* to_string(RollSign r) noexcept {
  switch (r) {
    case RollSign::None: return "none";
    case RollSign::Left: return "left";
    case RollSign::Right: return "right";
  }
  return "none";
}

AvoidanceDecision decide_avoidance(std::span<const Cluster> clusters, Point2 foe,
                                   double ttc_threshold) {
  if (clusters.empty()) throw Error(ErrorCode::NoClusters, "no clusters to decide on");
  const Cluster* lowest = &clusters.front();
  const Cluster* highest = &clusters.front();
  for (const Cluster& c : clusters) {
    if (c.mean_ttc < lowest->mean_ttc) lowest = &c;
    if (c.mean_ttc > highest->mean_ttc) highest = &c;
  }
  AvoidanceDecision d;
  d.obstacle = *lowest;
  d.foe_in_bbox = lowest->bbox_contains(foe);
  d.avoid = d.foe_in_bbox && lowest->mean_ttc < ttc_threshold;
  if (d.avoid) {
    d.roll_sign = highest->center().x > foe.x ? RollSign::Right : RollSign::Left;
    d.duration = kRollDuration;
  }
  return d;
}

}  // namespace faith
