// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

#include "faith/flow_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "faith/error.hpp"

namespace faith {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

bool finite(double v) { return std::isfinite(v); }

}  // namespace

CameraModel CameraModel::dvs240() {
  CameraModel cam;
  cam.width = 240.0;
  cam.height = 180.0;
  cam.fx = cam.fy = (cam.width / 2.0) / std::tan(30.0 * kDeg);
  cam.cx = 120.0;
  cam.cy = 90.0;
  return cam;
}

void CameraModel::validate() const {
  const bool ok = finite(width) && finite(height) && finite(fx) && finite(fy) &&
                  finite(cx) && finite(cy) && width > 0.0 && height > 0.0 &&
                  fx > 0.0 && fy > 0.0 && cx >= 0.0 && cx <= width &&
                  cy >= 0.0 && cy <= height;
  if (!ok) throw Error(ErrorCode::Domain, "invalid camera intrinsics");
}

CameraModel CameraModel::scaled(double factor) const {
  return {width * factor, height * factor, fx * factor,
          fy * factor,    cx * factor,     cy * factor};
}

void NoiseModel::validate() const {
  auto fraction = [](double f) { return f >= 0.0 && f <= 1.0; };
  if (!fraction(aperture_fraction) || !fraction(outlier_fraction) ||
      !(direction_sigma >= 0.0) || !(magnitude_sigma >= 0.0) ||
      !finite(direction_sigma) || !finite(magnitude_sigma)) {
    throw Error(ErrorCode::Domain, "invalid noise model");
  }
}

Point2 project(const ScenePoint& p, const CameraModel& cam) {
  if (!(p.Z > 0.0)) {
    throw Error(ErrorCode::BehindCamera,
                "scene point with Z = " + std::to_string(p.Z) + " is behind the camera");
  }
  return {cam.cx + cam.fx * p.X / p.Z, cam.cy + cam.fy * p.Y / p.Z};
}

Point2 normalize(Point2 pixel, const CameraModel& cam) {
  return {(pixel.x - cam.cx) / cam.fx, (pixel.y - cam.cy) / cam.fy};
}

namespace {

// Rotational flow in normalized image coordinates.
Point2 rotational_normalized(double x, double y, const RotationRates& r) {
  return {r.A * x * y - r.B * x * x - r.B + r.C * y,
          -r.C * x + r.A + r.A * y * y - r.B * x * y};
}

}  // namespace

FlowComponents flow_components(const ScenePoint& p, const EgoMotion& ego,
                               const CameraModel& cam) {
  if (!(p.Z > 0.0)) {
    throw Error(ErrorCode::BehindCamera,
                "scene point with Z = " + std::to_string(p.Z) + " is behind the camera");
  }
  const double x = p.X / p.Z;
  const double y = p.Y / p.Z;
  const double ut = -ego.U / p.Z + x * ego.W / p.Z;
  const double vt = -ego.V / p.Z + y * ego.W / p.Z;
  const Point2 rot = rotational_normalized(x, y, {ego.A, ego.B, ego.C});
  return {{cam.fx * ut, cam.fy * vt}, {cam.fx * rot.x, cam.fy * rot.y}};
}

FlowVector true_flow(const ScenePoint& p, const EgoMotion& ego,
                     const CameraModel& cam, double t) {
  const FlowComponents c = flow_components(p, ego, cam);
  const Point2 f = c.total();
  return {t, project(p, cam), f.x, f.y};
}

Point2 rotational_flow(Point2 pixel, const RotationRates& rates,
                       const CameraModel& cam) {
  const Point2 n = normalize(pixel, cam);
  const Point2 rot = rotational_normalized(n.x, n.y, rates);
  return {cam.fx * rot.x, cam.fy * rot.y};
}

FlowVector derotate(const FlowVector& v, const RotationRates& rates,
                    const CameraModel& cam) {
  const Point2 rot = rotational_flow(v.pos, rates, cam);
  return {v.t, v.pos, v.u - rot.x, v.v - rot.y};
}

Point2 ground_truth_foe(const EgoMotion& ego, const CameraModel& cam) {
  if (ego.W == 0.0) {
    throw Error(ErrorCode::NoFoe, "no FOE for purely lateral motion (W = 0)");
  }
  return {cam.cx + cam.fx * ego.U / ego.W, cam.cy + cam.fy * ego.V / ego.W};
}

CourseAngle course_angle(Point2 foe, const CameraModel& cam) {
  return {std::atan((foe.x - cam.cx) / cam.fx) / kDeg,
          std::atan((foe.y - cam.cy) / cam.fy) / kDeg};
}

namespace {

double ray_angle_deg(double ax, double ay, double az, double bx, double by,
                     double bz) {
  const double cx = ay * bz - az * by;
  const double cy = az * bx - ax * bz;
  const double cz = ax * by - ay * bx;
  const double s = std::sqrt(cx * cx + cy * cy + cz * cz);
  const double c = ax * bx + ay * by + az * bz;
  return std::atan2(s, c) / kDeg;
}

}  // namespace

double angular_error_deg(Point2 estimate, Point2 truth, const CameraModel& cam) {
  const Point2 a = normalize(estimate, cam);
  const Point2 b = normalize(truth, cam);
  return ray_angle_deg(a.x, a.y, 1.0, b.x, b.y, 1.0);
}

double angular_error_deg(Point2 estimate, const EgoMotion& ego,
                         const CameraModel& cam) {
  const Point2 a = normalize(estimate, cam);
  // The FOE ray points along the travel direction when approaching and
  // against it when receding.
  const double s = ego.W < 0.0 ? -1.0 : 1.0;
  return ray_angle_deg(a.x, a.y, 1.0, s * ego.U, s * ego.V, s * ego.W);
}

std::vector<ScenePoint> random_scene(Rng& rng, std::size_t count,
                                     const CameraModel& cam, double z_min,
                                     double z_max) {
  if (!(z_min > 0.0) || !(z_max >= z_min)) {
    throw Error(ErrorCode::Domain, "invalid scene depth range");
  }
  std::vector<ScenePoint> scene;
  scene.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double px = uniform01(rng) * cam.width;
    const double py = uniform01(rng) * cam.height;
    const double z = z_min + uniform01(rng) * (z_max - z_min);
    scene.push_back({(px - cam.cx) / cam.fx * z, (py - cam.cy) / cam.fy * z, z});
  }
  return scene;
}

std::vector<FlowVector> synthesize_flow_field(std::span<const ScenePoint> scene,
                                              const EgoMotion& ego,
                                              const CameraModel& cam,
                                              const NoiseModel& noise, double t) {
  noise.validate();
  Rng rng(noise.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const RotationRates rates{ego.A, ego.B, ego.C};
  constexpr double kTwoPi = 2.0 * std::numbers::pi;

  std::vector<FlowVector> out;
  out.reserve(scene.size());
  for (const ScenePoint& p : scene) {
    if (!(p.Z > 0.0)) continue;
    const Point2 pos = project(p, cam);
    if (!cam.in_image(pos)) continue;

    // Fixed draw count per point keeps the stream aligned whatever the config.
    const double aperture_coin = uniform01(rng);
    const double edge_angle = kTwoPi * uniform01(rng);
    const double dir_draw = gauss(rng);
    const double mag_draw = gauss(rng);
    const double outlier_coin = uniform01(rng);
    const double outlier_angle = kTwoPi * uniform01(rng);
    const double outlier_scale = 0.5 + uniform01(rng);

    const FlowVector measured = true_flow(p, ego, cam, t);
    const FlowVector trans = derotate(measured, rates, cam);
    Point2 f{trans.u, trans.v};
    const double clean_mag = norm(f);

    if (aperture_coin < noise.aperture_fraction) {
      const Point2 n{std::cos(edge_angle), std::sin(edge_angle)};
      f = dot(f, n) * n;
    }
    if (noise.direction_sigma > 0.0) {
      const double a = noise.direction_sigma * dir_draw;
      const double c = std::cos(a), s = std::sin(a);
      f = {c * f.x - s * f.y, s * f.x + c * f.y};
    }
    if (noise.magnitude_sigma > 0.0) {
      f = std::max(1.0 + noise.magnitude_sigma * mag_draw, 1e-3) * f;
    }
    if (outlier_coin < noise.outlier_fraction) {
      const double m = outlier_scale * clean_mag;
      f = {m * std::cos(outlier_angle), m * std::sin(outlier_angle)};
    }
    if (f.x == 0.0 && f.y == 0.0) continue;
    out.push_back({t, pos, f.x, f.y});
  }
  if (out.empty()) {
    throw Error(ErrorCode::EmptyField, "no visible scene point produced flow");
  }
  return out;
}

EgoMotion ego_for_course(double horizontal_deg, double vertical_deg,
                         double speed) {
  const double h = horizontal_deg * kDeg;
  const double w = std::cos(h);
  EgoMotion ego;
  ego.U = std::sin(h);
  ego.W = w;
  ego.V = std::tan(vertical_deg * kDeg) * w;
  const double n = std::sqrt(ego.U * ego.U + ego.V * ego.V + ego.W * ego.W);
  ego.U *= speed / n;
  ego.V *= speed / n;
  ego.W *= speed / n;
  return ego;
}

EgoMotion SwayProfile::at(const EgoMotion& base, double t) const {
  EgoMotion e = base;
  e.U += amplitude * std::sin(2.0 * std::numbers::pi * frequency * t);
  return e;
}

}  // namespace faith
