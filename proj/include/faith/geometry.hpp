// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

namespace faith {

struct FlowVector;

/// Image-plane point in pixels.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double norm(Point2 a);

/// Closed half-plane {p : (p - anchor) . normal <= 0}. The normal points
/// out of the half-plane, into the excluded side.
struct HalfPlane {
  Point2 anchor;
  Point2 normal;  // unit length

  /// Signed distance of p from the boundary; positive means excluded.
  double signed_distance(Point2 p) const { return dot(p - anchor, normal); }
  bool contains(Point2 p, double slack = 0.0) const {
    return signed_distance(p) <= slack;
  }
};

/// Convex polygon with counter-clockwise vertices. Fewer than three vertices
/// is the empty region.
struct ConvexPolygon {
  std::vector<Point2> vertices;

  bool empty() const { return vertices.size() < 3; }
  static ConvexPolygon rectangle(double x0, double y0, double x1, double y1);
};

/// Vertices within this distance of a clipping line count as on it and are kept.
inline constexpr double kClipEpsilon = 1e-9;
/// Polygons with smaller area are treated as empty.
inline constexpr double kMinPolygonArea = 1e-6;

/// The half-plane the flow vector points away from: anchored at the vector's
/// position with the normalized flow direction as outward normal. Throws
/// ErrorCode::DegenerateInput for a zero-magnitude vector.
HalfPlane negative_half_plane(const FlowVector& v);

/// Sutherland-Hodgman clip of a convex polygon against one half-plane.
/// Results with area below kMinPolygonArea come back empty.
ConvexPolygon clip(const ConvexPolygon& region, const HalfPlane& h);

/// Shoelace area; 0 for the empty polygon.
double area(const ConvexPolygon& region);

/// Area-weighted centroid. Throws ErrorCode::NoCentroid when the polygon is
/// empty or thinner than kMinPolygonArea.
Point2 centroid(const ConvexPolygon& region);

/// Point-in-convex-polygon test; `slack` widens every edge outward.
bool contains(const ConvexPolygon& region, Point2 p, double slack = 0.0);

/// Axis-aligned bounds {min, max} of the vertices.
std::pair<Point2, Point2> bounds(const ConvexPolygon& region);

}  // namespace faith
