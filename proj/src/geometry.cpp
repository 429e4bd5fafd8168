// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

#include "faith/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "faith/error.hpp"
#include "faith/flow_model.hpp"

namespace faith {

double norm(Point2 a) { return std::hypot(a.x, a.y); }

ConvexPolygon ConvexPolygon::rectangle(double x0, double y0, double x1,
                                       double y1) {
  return ConvexPolygon{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

HalfPlane negative_half_plane(const FlowVector& v) {
  const double mag = std::hypot(v.u, v.v);
  if (!(mag > 0.0) || !std::isfinite(mag)) {
    throw Error(ErrorCode::DegenerateInput,
                "flow vector at (" + std::to_string(v.pos.x) + ", " +
                    std::to_string(v.pos.y) + ") has no usable magnitude");
  }
  return HalfPlane{v.pos, {v.u / mag, v.v / mag}};
}

namespace {

double signed_area2(const std::vector<Point2>& pts) {
  const std::size_t n = pts.size();
  if (n < 3) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) acc += cross(pts[j], pts[i]);
  return acc;
}

void push_distinct(std::vector<Point2>& out, Point2 p) {
  if (!out.empty()) {
    const Point2 d = p - out.back();
    if (std::abs(d.x) <= 1e-12 && std::abs(d.y) <= 1e-12) return;
  }
  out.push_back(p);
}

}  // namespace

ConvexPolygon clip(const ConvexPolygon& region, const HalfPlane& h) {
  if (region.empty()) return {};
  const auto& in = region.vertices;
  const std::size_t n = in.size();

  // Fast paths: fully inside or fully outside.
  bool all_in = true, all_out = true;
  for (const Point2& p : in) {
    const double d = h.signed_distance(p);
    all_in = all_in && d <= kClipEpsilon;
    all_out = all_out && d > kClipEpsilon;
  }
  if (all_in) return region;
  if (all_out) return {};

  std::vector<Point2> out;
  out.reserve(n + 1);
  Point2 prev = in[n - 1];
  double d_prev = h.signed_distance(prev);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 cur = in[i];
    const double d_cur = h.signed_distance(cur);
    const bool prev_in = d_prev <= kClipEpsilon;
    const bool cur_in = d_cur <= kClipEpsilon;
    if (prev_in != cur_in) {
      const double t = d_prev / (d_prev - d_cur);
      push_distinct(out, prev + t * (cur - prev));
    }
    if (cur_in) push_distinct(out, cur);
    prev = cur;
    d_prev = d_cur;
  }
  while (out.size() > 1) {
    const Point2 d = out.front() - out.back();
    if (std::abs(d.x) > 1e-12 || std::abs(d.y) > 1e-12) break;
    out.pop_back();
  }
  ConvexPolygon result{std::move(out)};
  if (area(result) < kMinPolygonArea) return {};
  return result;
}

double area(const ConvexPolygon& region) {
  return std::abs(0.5 * signed_area2(region.vertices));
}

Point2 centroid(const ConvexPolygon& region) {
  const auto& v = region.vertices;
  const double a2 = signed_area2(v);
  if (region.empty() || std::abs(0.5 * a2) < kMinPolygonArea) {
    throw Error(ErrorCode::NoCentroid, "polygon has no interior");
  }
  // Shift to the first vertex to keep the products small.
  const Point2 o = v.front();
  double cx = 0.0, cy = 0.0, acc = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 p = v[j] - o, q = v[i] - o;
    const double w = cross(p, q);
    acc += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  return {o.x + cx / (3.0 * acc), o.y + cy / (3.0 * acc)};
}

bool contains(const ConvexPolygon& region, Point2 p, double slack) {
  if (region.empty()) return false;
  const auto& v = region.vertices;
  const std::size_t n = v.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 e = v[i] - v[j];
    const double len = norm(e);
    if (len == 0.0) continue;
    // Inside of a CCW edge is on its left.
    if (cross(e, p - v[j]) / len < -slack) return false;
  }
  return true;
}

std::pair<Point2, Point2> bounds(const ConvexPolygon& region) {
  if (region.vertices.empty()) return {};
  Point2 lo = region.vertices.front(), hi = lo;
  for (const Point2& p : region.vertices) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  return {lo, hi};
}

}  // namespace faith
