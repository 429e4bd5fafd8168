// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "faith/error.hpp"
#include "faith/ttc.hpp"
#include "oracles.hpp"

namespace faith {
namespace {

const CameraModel kCam = CameraModel::dvs240();

TEST(ComputeTtc, DirectDivergence) {
  const std::vector<FlowVector> flow{{0, {120, 90}, 4, 0}};
  const auto s = compute_ttc(flow, {100, 90}, 10.0);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_DOUBLE_EQ(s[0].divergence, 0.2);
  EXPECT_DOUBLE_EQ(s[0].ttc, 5.0);
  EXPECT_FALSE(s[0].clipped);
  EXPECT_EQ(s[0].source, 0u);
}

TEST(ComputeTtc, UsesLargerOffsetAxis) {
  // dx = 2, dy = 30: divergence from v.
  const std::vector<FlowVector> flow{{0, {102, 120}, 5, 6}};
  const auto s = compute_ttc(flow, {100, 90}, 10.0);
  EXPECT_DOUBLE_EQ(s[0].divergence, 0.2);
}

TEST(ComputeTtc, ConstantDepthGivesUniformTtc) {
  const double Z = 4.0, W = 2.0;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> xy(-1, 1);
  std::vector<ScenePoint> scene;
  for (int i = 0; i < 200; ++i) scene.push_back({xy(rng) * Z * 0.5, xy(rng) * Z * 0.4, Z});
  const EgoMotion ego{0.3, 0.1, W, 0, 0, 0};
  const auto flow = synthesize_flow_field(scene, ego, kCam, {});
  for (const TtcSample& s : compute_ttc(flow, ground_truth_foe(ego, kCam), 10.0)) {
    EXPECT_NEAR(s.ttc, Z / W, 1e-9);
  }
}

TEST(ComputeTtc, ClipsSlowAndContractingFlow) {
  const std::vector<FlowVector> flow{
      {0, {150, 90}, 1e-6, 0}, {0, {150, 90}, -3, 0}, {0, {100, 90}, 1, 1}, {0, {160, 90}, 8, 0}};
  const auto s = compute_ttc(flow, {100, 90}, 10.0);
  ASSERT_EQ(s.size(), 3u);  // the vector on the FOE is dropped
  EXPECT_EQ(s[0].ttc, 10.0);
  EXPECT_TRUE(s[0].clipped);
  EXPECT_EQ(s[1].ttc, 10.0);
  EXPECT_TRUE(s[1].clipped);
  EXPECT_EQ(s[2].source, 3u);
  EXPECT_DOUBLE_EQ(s[2].ttc * s[2].divergence, 1.0);
}

TEST(ComputeTtc, Reciprocity) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> p(0, 240), f(-20, 20);
  std::vector<FlowVector> flow;
  for (int i = 0; i < 500; ++i) flow.push_back({0, {p(rng), p(rng) * 0.75}, f(rng), f(rng)});
  for (const TtcSample& s : compute_ttc(flow, {120, 90}, 10.0)) {
    EXPECT_TRUE(s.ttc > 0.0);
    EXPECT_LE(s.ttc, 10.0);
    if (!s.clipped) EXPECT_NEAR(s.ttc * s.divergence, 1.0, 1e-9);
  }
}

TEST(Features, Examples) {
  std::vector<TtcSample> s(2);
  s[0].pos = {120, 90};
  s[0].ttc = 2;
  s[1].pos = {0, 180};
  s[1].ttc = 4;
  const auto f = build_features(s, kCam);
  EXPECT_DOUBLE_EQ(f[0][0], 0.5);
  EXPECT_DOUBLE_EQ(f[0][1], 0.5);
  EXPECT_DOUBLE_EQ(f[0][2], -1.0);
  EXPECT_DOUBLE_EQ(f[1][2], 1.0);
  s[1].ttc = 2;
  const auto g = build_features(s, kCam);
  EXPECT_EQ(g[0][2], 0.0);
  EXPECT_EQ(g[1][2], 0.0);
}

TEST(Features, InsufficientData) {
  const std::vector<TtcSample> one(1);
  try {
    build_features(one, kCam);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientData);
  }
}

TEST(Dbscan, SmallExample) {
  const std::vector<Feature> pts{{0, 0, 0}, {0.05, 0, 0}, {0.1, 0, 0}, {1, 1, 0}};
  DbscanParams p;
  p.eps = 0.1;
  p.min_pts = 2;
  const DbscanResult r = dbscan(pts, p);
  ASSERT_EQ(r.clusters.size(), 1u);
  EXPECT_EQ(r.clusters[0], (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(r.noise, (std::vector<std::size_t>{3}));
  EXPECT_EQ(r.labels, oracle::dbscan_reference(pts, 0.1, 2));
}

TEST(Dbscan, SparsePointsAreNoise) {
  std::vector<Feature> pts;
  for (int i = 0; i < 30; ++i) pts.push_back({0.5 * i, 0, 0});
  const DbscanResult r = dbscan(pts, {0.2, 2, 10});
  EXPECT_TRUE(r.clusters.empty());
  EXPECT_EQ(r.noise.size(), 30u);
}

TEST(Dbscan, EmptyInput) {
  const DbscanResult r = dbscan(std::vector<Feature>{}, {});
  EXPECT_TRUE(r.labels.empty());
  EXPECT_TRUE(r.clusters.empty());
}

TEST(Dbscan, ParamsValidation) {
  EXPECT_THROW(dbscan(std::vector<Feature>{}, {0.0, 20, 10}), Error);
  EXPECT_THROW(dbscan(std::vector<Feature>{}, {0.2, 0, 10}), Error);
}

std::vector<Feature> blobs(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> k(1, 4);
  std::uniform_real_distribution<double> u(0, 1), z(-2, 2);
  std::normal_distribution<double> g(0, 0.08);
  const int centers = k(rng);
  std::vector<Feature> c;
  for (int i = 0; i < centers; ++i) c.push_back({u(rng), u(rng), z(rng)});
  std::vector<Feature> pts;
  for (std::size_t i = 0; i < n; ++i) {
    if (u(rng) < 0.15) {
      pts.push_back({u(rng), u(rng), z(rng)});
    } else {
      const Feature& m = c[i % c.size()];
      pts.push_back({m[0] + g(rng), m[1] + g(rng), m[2] + g(rng)});
    }
  }
  return pts;
}

TEST(Dbscan, MatchesBruteForceReference) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> size(1, 200), mp(1, 30);
  std::uniform_real_distribution<double> eps(0.03, 0.4);
  for (int i = 0; i < 150; ++i) {
    const auto pts = blobs(rng, size(rng));
    const DbscanParams p = i % 2 ? DbscanParams{} : DbscanParams{eps(rng), mp(rng), 10};
    const DbscanResult r = dbscan(pts, p);
    EXPECT_EQ(oracle::canonical(r.labels), oracle::canonical(oracle::dbscan_reference(pts, p.eps, p.min_pts)));
  }
}

TEST(Dbscan, ResultStructureConsistent) {
  std::mt19937_64 rng(4);
  const auto pts = blobs(rng, 200);
  const DbscanResult r = dbscan(pts, {0.2, 10, 10});
  std::size_t total = r.noise.size();
  for (std::size_t c = 0; c < r.clusters.size(); ++c) {
    EXPECT_GE(r.clusters[c].size(), 10u);
    EXPECT_TRUE(std::is_sorted(r.clusters[c].begin(), r.clusters[c].end()));
    for (std::size_t m : r.clusters[c]) EXPECT_EQ(r.labels[m], static_cast<int>(c));
    total += r.clusters[c].size();
  }
  for (std::size_t m : r.noise) EXPECT_EQ(r.labels[m], kNoise);
  EXPECT_EQ(total, pts.size());
}

TEST(Dbscan, DuplicationPreservesMembership) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    const auto pts = blobs(rng, 100);
    std::vector<Feature> doubled = pts;
    doubled.insert(doubled.end(), pts.begin(), pts.end());
    const DbscanResult d = dbscan(doubled, {0.2, 20, 10});
    EXPECT_EQ(oracle::canonical(d.labels), oracle::canonical(oracle::dbscan_reference(doubled, 0.2, 20)));
    // Doubling min_pts alongside the points reproduces the original partition.
    const DbscanResult a = dbscan(pts, {0.2, 10, 10});
    const DbscanResult b = dbscan(doubled, {0.2, 20, 10});
    const auto ca = oracle::canonical(a.labels);
    const auto cb = oracle::canonical(b.labels);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      EXPECT_EQ(cb[k], ca[k]);
      EXPECT_EQ(b.labels[k + pts.size()], b.labels[k]);
    }
  }
}

TEST(Dbscan, CorePartitionPermutationInvariant) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 20; ++i) {
    const auto pts = blobs(rng, 150);
    std::vector<std::size_t> perm(pts.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Feature> shuffled;
    for (std::size_t k : perm) shuffled.push_back(pts[k]);
    const DbscanParams p{0.2, 8, 10};
    const DbscanResult a = dbscan(pts, p);
    const DbscanResult b = dbscan(shuffled, p);
    EXPECT_EQ(a.clusters.size(), b.clusters.size());
    // Same-cluster relation among core points is preserved.
    std::vector<bool> core(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) {
      std::size_t c = 0;
      for (const Feature& q : pts) {
        const double d = std::hypot(pts[k][0] - q[0], pts[k][1] - q[1], pts[k][2] - q[2]);
        c += d <= p.eps;
      }
      core[k] = c >= p.min_pts;
    }
    std::vector<int> lb(pts.size());
    for (std::size_t k = 0; k < perm.size(); ++k) lb[perm[k]] = b.labels[k];
    for (std::size_t x = 0; x < pts.size(); ++x)
      for (std::size_t y = 0; y < pts.size(); ++y)
        if (core[x] && core[y]) EXPECT_EQ(a.labels[x] == a.labels[y], lb[x] == lb[y]);
  }
}

std::vector<TtcSample> box_samples(Point2 lo, Point2 hi, double ttc, std::size_t first) {
  std::vector<TtcSample> out;
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= 4; ++j) {
      TtcSample s;
      s.source = first + out.size();
      s.pos = {lo.x + (hi.x - lo.x) * i / 4.0, lo.y + (hi.y - lo.y) * j / 4.0};
      s.ttc = ttc;
      out.push_back(s);
    }
  return out;
}

TEST(SummarizeClusters, BboxAndMean) {
  auto samples = box_samples({10, 20}, {50, 60}, 2.0, 0);
  samples[3].ttc = 4.0;
  DbscanResult r;
  r.labels.assign(samples.size(), 0);
  r.labels.back() = kNoise;
  r.clusters.push_back({});
  for (std::size_t k = 0; k + 1 < samples.size(); ++k) r.clusters[0].push_back(k);
  r.noise = {samples.size() - 1};
  const auto clusters = summarize_clusters(samples, r);
  ASSERT_EQ(clusters.size(), 1u);
  EXPECT_EQ(clusters[0].members.size(), 24u);
  EXPECT_NEAR(clusters[0].mean_ttc, (23 * 2.0 + 4.0) / 24.0, 1e-12);
  EXPECT_EQ(clusters[0].bbox_min, (Point2{10, 20}));
  EXPECT_EQ(clusters[0].bbox_max, (Point2{50, 60}));
  for (std::size_t m : clusters[0].members) EXPECT_TRUE(clusters[0].bbox_contains(samples[m].pos));
}

Cluster make_cluster(int id, Point2 lo, Point2 hi, double ttc) {
  Cluster c;
  c.id = id;
  c.bbox_min = lo;
  c.bbox_max = hi;
  c.mean_ttc = ttc;
  return c;
}

TEST(DecideAvoidance, SingleClusterRightOfFoe) {
  const std::vector<Cluster> cs{make_cluster(0, {100, 50}, {200, 150}, 1.0)};
  const AvoidanceDecision d = decide_avoidance(cs, {110, 90}, 3.0);
  EXPECT_TRUE(d.avoid);
  EXPECT_EQ(d.roll_sign, RollSign::Right);
  EXPECT_EQ(d.duration, 1.5);
  EXPECT_TRUE(d.foe_in_bbox);
}

TEST(DecideAvoidance, FoeOutsideEveryBbox) {
  const std::vector<Cluster> cs{make_cluster(0, {100, 50}, {200, 150}, 1.0),
                                make_cluster(1, {0, 0}, {50, 50}, 8.0)};
  const AvoidanceDecision d = decide_avoidance(cs, {75, 170}, 3.0);
  EXPECT_FALSE(d.avoid);
  EXPECT_EQ(d.roll_sign, RollSign::None);
  EXPECT_EQ(d.duration, 0.0);
}

TEST(DecideAvoidance, RollsTowardsHighestTtc) {
  const std::vector<Cluster> cs{make_cluster(0, {100, 50}, {200, 150}, 1.0),
                                make_cluster(1, {0, 0}, {60, 180}, 8.0)};
  const AvoidanceDecision d = decide_avoidance(cs, {120, 90}, 3.0);
  EXPECT_TRUE(d.avoid);
  EXPECT_EQ(d.roll_sign, RollSign::Left);
  EXPECT_EQ(d.obstacle.id, 0);
}

TEST(DecideAvoidance, SlowObstacleNotAvoided) {
  const std::vector<Cluster> cs{make_cluster(0, {100, 50}, {200, 150}, 5.0)};
  EXPECT_FALSE(decide_avoidance(cs, {110, 90}, 3.0).avoid);
  EXPECT_FALSE(decide_avoidance(cs, {110, 90}, 0.0).avoid);
}

TEST(DecideAvoidance, MonotoneInThreshold) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> x(0, 240), y(0, 180), t(0.1, 10);
  for (int i = 0; i < 200; ++i) {
    std::vector<Cluster> cs;
    for (int k = 0; k < 3; ++k) {
      const double x0 = x(rng), y0 = y(rng);
      cs.push_back(make_cluster(k, {x0, y0}, {x0 + 60, y0 + 60}, t(rng)));
    }
    const Point2 foe{x(rng), y(rng)};
    bool seen = false;
    for (double th = 0; th <= 12; th += 0.25) {
      const bool avoid = decide_avoidance(cs, foe, th).avoid;
      EXPECT_FALSE(seen && !avoid);
      seen = seen || avoid;
    }
  }
}

TEST(DecideAvoidance, NoClusters) {
  try {
    decide_avoidance(std::vector<Cluster>{}, {0, 0}, 3.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoClusters);
  }
}

TEST(RollSign, Labels) {
  EXPECT_STREQ(to_string(RollSign::Left), "left");
  EXPECT_STREQ(to_string(RollSign::Right), "right");
  EXPECT_STREQ(to_string(RollSign::None), "none");
}

}  // namespace
}  // namespace faith
