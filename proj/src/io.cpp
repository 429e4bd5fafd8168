// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

#include "faith/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "faith/error.hpp"

namespace faith {

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::string where(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line) + ": ";
}

// Splits one CSV row into exactly N finite numbers.
template <std::size_t N>
std::array<double, N> parse_row(std::string_view row, std::string_view source,
                                std::size_t line) {
  std::array<double, N> out{};
  std::size_t field = 0;
  while (true) {
    const std::size_t comma = row.find(',');
    const std::string_view text = trim(row.substr(0, comma));
    if (field >= N) {
      throw Error(ErrorCode::Parse, where(source, line) + "expected " + std::to_string(N) +
                                        " fields, got more");
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() ||
        !std::isfinite(v)) {
      throw Error(ErrorCode::Parse, where(source, line) + "field " + std::to_string(field + 1) +
                                        " is not a finite number: '" + std::string(text) + "'");
    }
    out[field++] = v;
    if (comma == std::string_view::npos) break;
    row.remove_prefix(comma + 1);
  }
  if (field != N) {
    throw Error(ErrorCode::Parse, where(source, line) + "expected " + std::to_string(N) +
                                      " fields, got " + std::to_string(field));
  }
  return out;
}

template <std::size_t N, class F>
void parse_csv(std::istream& in, std::string_view source, std::string_view header,
               F&& on_row) {
  std::string line;
  std::size_t lineno = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    if (!saw_header) {
      if (row != header) {
        throw Error(ErrorCode::Parse, where(source, lineno) + "expected header '" +
                                          std::string(header) + "'");
      }
      saw_header = true;
      continue;
    }
    on_row(parse_row<N>(row, source, lineno), lineno);
  }
  if (!saw_header) {
    throw Error(ErrorCode::Parse, std::string(source) + ": missing header '" +
                                      std::string(header) + "'");
  }
}

}  // namespace

CameraModel parse_camera_json(std::string_view text) {
  CameraModel cam;
  try {
    const auto j = nlohmann::json::parse(text);
    cam.width = j.at("width").get<double>();
    cam.height = j.at("height").get<double>();
    cam.fx = j.at("fx").get<double>();
    cam.fy = j.at("fy").get<double>();
    cam.cx = j.at("cx").get<double>();
    cam.cy = j.at("cy").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("camera JSON: ") + e.what());
  }
  cam.validate();
  return cam;
}

CameraModel read_camera_json(const std::filesystem::path& path) {
  try {
    return parse_camera_json(slurp(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Io) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string camera_to_json(const CameraModel& cam) {
  nlohmann::ordered_json j;
  j["width"] = cam.width;
  j["height"] = cam.height;
  j["fx"] = cam.fx;
  j["fy"] = cam.fy;
  j["cx"] = cam.cx;
  j["cy"] = cam.cy;
  return j.dump(2);
}

std::vector<FlowVector> parse_flow_csv(std::istream& in, std::string_view source) {
  std::vector<FlowVector> flow;
  parse_csv<5>(in, source, "t,x,y,u,v", [&](const std::array<double, 5>& r, std::size_t line) {
    if (r[0] < 0.0) {
      throw Error(ErrorCode::Parse, where(source, line) + "negative timestamp");
    }
    flow.push_back({r[0], {r[1], r[2]}, r[3], r[4]});
  });
  return flow;
}

std::vector<FlowVector> read_flow_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return parse_flow_csv(in, path.string());
}

void write_flow_csv(std::ostream& os, std::span<const FlowVector> flow) {
  os << "t,x,y,u,v\n";
  for (const FlowVector& f : flow) {
    os << format_number(f.t) << ',' << format_number(f.pos.x) << ','
       << format_number(f.pos.y) << ',' << format_number(f.u) << ','
       << format_number(f.v) << '\n';
  }
}

void write_flow_csv(const std::filesystem::path& path, std::span<const FlowVector> flow) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  write_flow_csv(out, flow);
  if (!out) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

std::vector<TrajectorySample> parse_trajectory_csv(std::istream& in,
                                                   std::string_view source) {
  std::vector<TrajectorySample> traj;
  parse_csv<7>(in, source, "t,U,V,W,A,B,C", [&](const std::array<double, 7>& r, std::size_t line) {
    if (!traj.empty() && r[0] < traj.back().t) {
      throw Error(ErrorCode::Parse, where(source, line) + "timestamps must not decrease");
    }
    traj.push_back({r[0], {r[1], r[2], r[3], r[4], r[5], r[6]}});
  });
  return traj;
}

std::vector<TrajectorySample> read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return parse_trajectory_csv(in, path.string());
}

void write_trajectory_csv(std::ostream& os, std::span<const TrajectorySample> trajectory) {
  os << "t,U,V,W,A,B,C\n";
  for (const TrajectorySample& s : trajectory) {
    const EgoMotion& e = s.ego;
    os << format_number(s.t);
    for (double v : {e.U, e.V, e.W, e.A, e.B, e.C}) os << ',' << format_number(v);
    os << '\n';
  }
}

EgoMotion ego_at(std::span<const TrajectorySample> trajectory, double t) {
  if (trajectory.empty()) throw Error(ErrorCode::InsufficientData, "empty trajectory");
  if (t <= trajectory.front().t) return trajectory.front().ego;
  if (t >= trajectory.back().t) return trajectory.back().ego;
  const auto hi = std::upper_bound(trajectory.begin(), trajectory.end(), t,
                                   [](double v, const TrajectorySample& s) { return v < s.t; });
  const auto lo = hi - 1;
  const double span = hi->t - lo->t;
  const double w = span > 0.0 ? (t - lo->t) / span : 0.0;
  auto lerp = [w](double a, double b) { return a + w * (b - a); };
  const EgoMotion& a = lo->ego;
  const EgoMotion& b = hi->ego;
  return {lerp(a.U, b.U), lerp(a.V, b.V), lerp(a.W, b.W),
          lerp(a.A, b.A), lerp(a.B, b.B), lerp(a.C, b.C)};
}

}  // namespace faith
