// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "faith/flow_model.hpp"

namespace faith {

/// Decimal text with 12 significant digits, as written to every CSV.
std::string format_number(double value);

CameraModel parse_camera_json(std::string_view text);
CameraModel read_camera_json(const std::filesystem::path& path);
std::string camera_to_json(const CameraModel& cam);

/// Header `t,x,y,u,v`. Parse errors name the source and the 1-based line.
std::vector<FlowVector> parse_flow_csv(std::istream& in,
                                       std::string_view source = "<stream>");
std::vector<FlowVector> read_flow_csv(const std::filesystem::path& path);
void write_flow_csv(std::ostream& os, std::span<const FlowVector> flow);
void write_flow_csv(const std::filesystem::path& path,
                    std::span<const FlowVector> flow);

struct TrajectorySample {
  double t = 0.0;
  EgoMotion ego;
};

/// Header `t,U,V,W,A,B,C`, rows in non-decreasing time.
std::vector<TrajectorySample> parse_trajectory_csv(std::istream& in,
                                                   std::string_view source = "<stream>");
std::vector<TrajectorySample> read_trajectory_csv(const std::filesystem::path& path);
void write_trajectory_csv(std::ostream& os,
                          std::span<const TrajectorySample> trajectory);

/// Linear interpolation in time, clamped to the first/last sample.
EgoMotion ego_at(std::span<const TrajectorySample> trajectory, double t);

}  // namespace faith
