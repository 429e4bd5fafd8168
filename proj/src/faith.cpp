// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

#include "faith/faith.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "faith/error.hpp"
#include "faith/kernels.hpp"
#include "faith/random.hpp"

namespace faith {

namespace {

// Relative shrink an accepted clip must achieve.
constexpr double kAreaRelTol = 1e-9;
// Scoring slack around half-plane boundaries, pixels.
constexpr double kScoreSlack = 1e-6;
// Distance at which a region vertex counts as lying on the search boundary.
constexpr double kBoundaryTol = 1e-6;

bool on_search_boundary(Point2 p, const ConvexPolygon& rect) {
  const auto [lo, hi] = bounds(rect);
  return std::abs(p.x - lo.x) <= kBoundaryTol || std::abs(p.x - hi.x) <= kBoundaryTol ||
         std::abs(p.y - lo.y) <= kBoundaryTol || std::abs(p.y - hi.y) <= kBoundaryTol;
}

bool touches_boundary(const ConvexPolygon& region, const ConvexPolygon& rect) {
  for (const Point2& p : region.vertices) {
    if (on_search_boundary(p, rect)) return true;
  }
  return false;
}

}  // namespace

std::size_t required_iterations(double p, double w, unsigned n) {
  if (!(p > 0.0 && p < 1.0) || !(w > 0.0 && w <= 1.0) || n < 1) {
    throw Error(ErrorCode::Domain,
                "required_iterations needs 0 < p < 1, 0 < w <= 1, n >= 1");
  }
  if (w == 1.0) return 1;
  const double denom = std::log1p(-std::pow(w, static_cast<double>(n)));
  const double iters = std::ceil(std::log1p(-p) / denom);
  if (!std::isfinite(iters) ||
      iters > static_cast<double>(std::numeric_limits<std::size_t>::max() / 2)) {
    throw Error(ErrorCode::Domain, "required iteration count is not representable");
  }
  return iters < 1.0 ? 1 : static_cast<std::size_t>(iters);
}

void FaithConfig::validate() const {
  if (iterations < 1 || !(bound_margin >= 0.0) || !std::isfinite(bound_margin) ||
      min_vectors < 3) {
    throw Error(ErrorCode::Domain,
                "FAITH config needs iterations >= 1, bound_margin >= 0, min_vectors >= 3");
  }
}

ConvexPolygon search_rectangle(const CameraModel& cam, double margin) {
  const double mx = margin * cam.width, my = margin * cam.height;
  return ConvexPolygon::rectangle(-mx, -my, cam.width + mx, cam.height + my);
}

FoeEstimate estimate_foe(std::span<const FlowVector> flow, const CameraModel& cam,
                         const FaithConfig& cfg, FaithTrace* trace) {
  cfg.validate();
  cam.validate();
  const std::size_t n = flow.size();
  if (n < cfg.min_vectors) {
    throw Error(ErrorCode::TooFewVectors,
                "FAITH needs at least " + std::to_string(cfg.min_vectors) +
                    " flow vectors, got " + std::to_string(n));
  }

  std::vector<HalfPlane> planes;
  planes.reserve(n);
  for (const FlowVector& v : flow) planes.push_back(negative_half_plane(v));
  const simd::AffineSet scoring = simd::AffineSet::from_half_planes(planes);
  const ConvexPolygon rect = search_rectangle(cam, cfg.bound_margin);

  struct Best {
    std::size_t score;
    double area;
    ConvexPolygon region;
    Point2 center;
  };
  std::optional<Best> best;
  if (trace) {
    trace->iterations.clear();
    trace->iterations.reserve(cfg.iterations);
  }

  std::vector<std::size_t> order(n);
  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    Rng rng(derive_seed(cfg.rng_seed, "faith-iteration", it));
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Lazy Fisher-Yates: draw k picks the k-th vector without replacement.
    auto draw = [&](std::size_t k) {
      std::swap(order[k], order[k + uniform_index(rng, n - k)]);
      return order[k];
    };

    FaithIterationTrace* rec = nullptr;
    if (trace) rec = &trace->iterations.emplace_back();

    const std::size_t first = draw(0);
    const std::size_t second = draw(1);
    ConvexPolygon region = clip(clip(rect, planes[first]), planes[second]);
    if (region.empty()) {
      if (rec) rec->degenerate = true;
      continue;
    }
    double current = area(region);
    if (rec) rec->areas.push_back(current);

    for (std::size_t k = 2; k < n; ++k) {
      ConvexPolygon candidate = clip(region, planes[draw(k)]);
      // An empty intersection means the pick disagrees with the whole area;
      // it does not narrow the FOE down, so the search stops like any other
      // non-shrinking pick.
      if (candidate.empty()) break;
      const double a = area(candidate);
      if (!(a < current * (1.0 - kAreaRelTol))) break;
      region = std::move(candidate);
      current = a;
      if (rec) rec->areas.push_back(current);
    }

    const Point2 center = centroid(region);
    const std::size_t score = simd::count_at_most(scoring, center, kScoreSlack);
    if (rec) {
      rec->region = region;
      rec->center = center;
      rec->score = score;
    }

    const bool better = !best || score > best->score ||
                        (score == best->score && current < best->area);
    if (better) {
      best = Best{score, current, std::move(region), center};
      if (trace) trace->best_iteration = it;
    }
  }

  if (!best) {
    throw Error(ErrorCode::AllIterationsDegenerate,
                "every FAITH iteration produced an empty FOE area");
  }
  FoeEstimate est;
  est.foe = best->center;
  est.score = best->score;
  est.bounded = !touches_boundary(best->region, rect);
  est.region = std::move(best->region);
  est.method = "faith";
  return est;
}

const char* to_string(Direction d) noexcept {
  switch (d) {
    case Direction::None: return "none";
    case Direction::Left: return "left";
    case Direction::Right: return "right";
    case Direction::Up: return "up";
    case Direction::Down: return "down";
  }
  return "none";
}

Direction detect_unbounded(const FoeEstimate& est, const CameraModel& cam,
                           const FaithConfig& cfg) {
  const ConvexPolygon rect = search_rectangle(cam, cfg.bound_margin);
  Point2 sum{0.0, 0.0};
  std::size_t contacts = 0;
  for (const Point2& p : est.region.vertices) {
    if (on_search_boundary(p, rect)) {
      sum = sum + p;
      ++contacts;
    }
  }
  if (contacts == 0) return Direction::None;

  const Point2 mean = (1.0 / static_cast<double>(contacts)) * sum;
  const double dx = mean.x - 0.5 * cam.width;
  const double dy = mean.y - 0.5 * cam.height;
  const double half_w = cam.width * (0.5 + cfg.bound_margin);
  const double half_h = cam.height * (0.5 + cfg.bound_margin);
  if (std::abs(dx) / half_w >= std::abs(dy) / half_h) {
    return dx > 0.0 ? Direction::Right : Direction::Left;
  }
  return dy > 0.0 ? Direction::Down : Direction::Up;
}

}  // namespace faith
