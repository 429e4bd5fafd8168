// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "faith/geometry.hpp"
#include "faith/random.hpp"

namespace faith {

/// Pinhole intrinsics in pixels. Image spans [0, width] x [0, height].
struct CameraModel {
  double width = 240.0;
  double height = 180.0;
  double fx = 0.0;
  double fy = 0.0;
  double cx = 120.0;
  double cy = 90.0;

  /// 240x180 sensor whose horizontal field of view is exactly +-30 degrees.
  static CameraModel dvs240();
  /// Throws ErrorCode::Domain when an invariant is violated.
  void validate() const;
  bool in_image(Point2 p) const {
    return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
  }
  /// Same field of view at `factor` times the resolution.
  CameraModel scaled(double factor) const;
};

/// Camera-frame ego velocity. U, V, W in m/s (W along the principal axis,
/// positive when approaching the scene); A, B, C body rates in rad/s.
struct EgoMotion {
  double U = 0.0, V = 0.0, W = 0.0;
  double A = 0.0, B = 0.0, C = 0.0;
};

struct RotationRates {
  double A = 0.0, B = 0.0, C = 0.0;
};

/// Camera-frame point in metres.
struct ScenePoint {
  double X = 0.0, Y = 0.0, Z = 0.0;
};

/// One sparse optic-flow measurement. u, v in px/s.
struct FlowVector {
  double t = 0.0;
  Point2 pos;
  double u = 0.0;
  double v = 0.0;

  friend bool operator==(const FlowVector&, const FlowVector&) = default;
};

/// Perturbations applied on top of exact translational flow.
struct NoiseModel {
  double aperture_fraction = 0.0;  // share projected onto a random edge normal
  double direction_sigma = 0.0;    // radians
  double magnitude_sigma = 0.0;    // relative
  double outlier_fraction = 0.0;   // share replaced by random flow
  std::uint64_t seed = 0;

  void validate() const;
  bool is_zero() const {
    return aperture_fraction == 0.0 && direction_sigma == 0.0 &&
           magnitude_sigma == 0.0 && outlier_fraction == 0.0;
  }
};

/// Flow split into its translational and rotational parts, px/s.
struct FlowComponents {
  Point2 translational;
  Point2 rotational;

  Point2 total() const { return translational + rotational; }
};

Point2 project(const ScenePoint& p, const CameraModel& cam);

/// Pixel -> normalized image coordinates (X/Z, Y/Z).
Point2 normalize(Point2 pixel, const CameraModel& cam);

FlowComponents flow_components(const ScenePoint& p, const EgoMotion& ego,
                               const CameraModel& cam);

/// Full (translational + rotational) flow at the projection of `p`.
FlowVector true_flow(const ScenePoint& p, const EgoMotion& ego,
                     const CameraModel& cam, double t = 0.0);

/// Rotational flow at a pixel position for the given body rates, px/s.
Point2 rotational_flow(Point2 pixel, const RotationRates& rates,
                       const CameraModel& cam);

/// Removes the rotation-induced component using known body rates.
FlowVector derotate(const FlowVector& v, const RotationRates& rates,
                    const CameraModel& cam);

/// FOE pixel of the ego translation. May lie outside the image.
Point2 ground_truth_foe(const EgoMotion& ego, const CameraModel& cam);

struct CourseAngle {
  double horizontal_deg = 0.0;
  double vertical_deg = 0.0;
};

CourseAngle course_angle(Point2 foe, const CameraModel& cam);

/// Angle in degrees between the viewing rays through two pixels.
double angular_error_deg(Point2 estimate, Point2 truth, const CameraModel& cam);
/// Angle in degrees between the viewing ray through `estimate` and the
/// direction of travel. Well defined for courses at or beyond 90 degrees.
double angular_error_deg(Point2 estimate, const EgoMotion& ego,
                         const CameraModel& cam);

/// Random scene whose points project uniformly over the image, with depth
/// uniform in [z_min, z_max].
std::vector<ScenePoint> random_scene(Rng& rng, std::size_t count,
                                     const CameraModel& cam, double z_min = 1.0,
                                     double z_max = 10.0);

/// Derotated flow of the visible points with noise applied. Points outside
/// the image or behind the camera are skipped; vectors whose magnitude ends up
/// exactly zero (a point sitting on the FOE) are dropped. Throws
/// ErrorCode::EmptyField when nothing remains.
std::vector<FlowVector> synthesize_flow_field(std::span<const ScenePoint> scene,
                                              const EgoMotion& ego,
                                              const CameraModel& cam,
                                              const NoiseModel& noise,
                                              double t = 0.0);

/// Forward motion at `speed` m/s along the given course angles.
EgoMotion ego_for_course(double horizontal_deg, double vertical_deg = 0.0,
                         double speed = 1.0);

/// Lateral sway: U(t) = base.U + amplitude * sin(2 pi frequency t).
struct SwayProfile {
  double amplitude = 0.0;  // m/s
  double frequency = 0.0;  // Hz

  EgoMotion at(const EgoMotion& base, double t) const;
};

}  // namespace faith
