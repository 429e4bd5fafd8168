// Copyright 2026 The faith-foe Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "faith/error.hpp"
#include "faith/io.hpp"

namespace faith {
namespace {

namespace fs = std::filesystem;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Domain;
}

std::string message_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("faith_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST(FormatNumber, TwelveSignificantDigits) {
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(-207.846096908), "-207.846096908");
  EXPECT_EQ(format_number(12), "12");
}

TEST(FlowCsv, RoundTripWithinTolerance) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> t(0, 10), p(-500, 500), f(-1e4, 1e4);
  std::vector<FlowVector> flow;
  for (int i = 0; i < 1000; ++i) flow.push_back({t(rng), {p(rng), p(rng)}, f(rng), f(rng)});
  std::stringstream ss;
  write_flow_csv(ss, flow);
  const auto back = parse_flow_csv(ss);
  ASSERT_EQ(back.size(), flow.size());
  for (std::size_t i = 0; i < flow.size(); ++i) {
    EXPECT_NEAR(back[i].t, flow[i].t, 1e-9);
    EXPECT_NEAR(back[i].pos.x, flow[i].pos.x, 1e-9);
    EXPECT_NEAR(back[i].pos.y, flow[i].pos.y, 1e-9);
    EXPECT_NEAR(back[i].u, flow[i].u, 1e-9 * std::max(1.0, std::abs(flow[i].u)));
    EXPECT_NEAR(back[i].v, flow[i].v, 1e-9 * std::max(1.0, std::abs(flow[i].v)));
  }
}

TEST(FlowCsv, RewriteIsStable) {
  std::stringstream a;
  write_flow_csv(a, std::vector<FlowVector>{{0.1, {1.25, 2}, 3.3333333333333, -4}});
  const std::string first = a.str();
  std::stringstream b;
  write_flow_csv(b, parse_flow_csv(a));
  EXPECT_EQ(b.str(), first);
  EXPECT_EQ(first.substr(0, first.find('\n')), "t,x,y,u,v");
}

TEST(FlowCsv, AcceptsBlankLinesAndCrlf) {
  std::istringstream in("t,x,y,u,v\r\n0,1,2,3,4\r\n\r\n0.5, 5 ,6,7,8\n");
  const auto flow = parse_flow_csv(in);
  ASSERT_EQ(flow.size(), 2u);
  EXPECT_EQ(flow[1], (FlowVector{0.5, {5, 6}, 7, 8}));
}

TEST(FlowCsv, MalformedRowNamesLine) {
  std::istringstream in("t,x,y,u,v\n0,1,2,3,4\n0,1,abc,3,4\n");
  const std::string msg = message_of([&] { parse_flow_csv(in, "field.csv"); });
  EXPECT_NE(msg.find("field.csv:3:"), std::string::npos) << msg;
  EXPECT_NE(msg.find("abc"), std::string::npos);
}

TEST(FlowCsv, RejectsBadRows) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_flow_csv(in);
  };
  EXPECT_EQ(code_of([&] { parse("x,y\n1,2\n"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([&] { parse(""); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([&] { parse("t,x,y,u,v\n0,1,2,3\n"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([&] { parse("t,x,y,u,v\n0,1,2,3,4,5\n"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([&] { parse("t,x,y,u,v\n0,1,2,nan,4\n"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([&] { parse("t,x,y,u,v\n0,1,2,inf,4\n"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([&] { parse("t,x,y,u,v\n-1,1,2,3,4\n"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([&] { parse("t,x,y,u,v\n0,1,,3,4\n"); }), ErrorCode::Parse);
  EXPECT_EQ(parse("t,x,y,u,v\n").size(), 0u);
}

TEST_F(TempDir, FlowFileRoundTrip) {
  const std::vector<FlowVector> flow{{0, {1, 2}, 3, 4}, {1, {5, 6}, 7, 8}};
  const fs::path p = dir_ / "flow.csv";
  write_flow_csv(p, flow);
  EXPECT_EQ(read_flow_csv(p), flow);
}

TEST_F(TempDir, MissingFileIsIoError) {
  const fs::path p = dir_ / "missing.csv";
  EXPECT_EQ(code_of([&] { read_flow_csv(p); }), ErrorCode::Io);
  const std::string msg = message_of([&] { read_flow_csv(p); });
  EXPECT_NE(msg.find("missing.csv"), std::string::npos);
  EXPECT_EQ(code_of([&] { write_flow_csv(dir_ / "no" / "such" / "dir.csv", {}); }), ErrorCode::Io);
}

TEST(CameraJson, RoundTrip) {
  const CameraModel cam = CameraModel::dvs240();
  const CameraModel back = parse_camera_json(camera_to_json(cam));
  EXPECT_EQ(back.width, cam.width);
  EXPECT_EQ(back.fx, cam.fx);
  EXPECT_EQ(back.cy, cam.cy);
}

TEST(CameraJson, Errors) {
  EXPECT_EQ(code_of([] { parse_camera_json("{"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { parse_camera_json(R"({"width": 240})"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] {
              parse_camera_json(R"({"width":240,"height":180,"fx":-1,"fy":1,"cx":1,"cy":1})");
            }),
            ErrorCode::Domain);
}

TEST_F(TempDir, CameraFileNamesPath) {
  const fs::path p = dir_ / "cam.json";
  std::ofstream(p) << R"({"width": 240, "height": "x"})";
  const std::string msg = message_of([&] { read_camera_json(p); });
  EXPECT_NE(msg.find("cam.json"), std::string::npos) << msg;
}

TEST(Trajectory, RoundTripAndInterpolation) {
  const std::vector<TrajectorySample> traj{{0.0, {0, 0, 1, 0, 0, 0}}, {1.0, {1, 0, 1, 0, 0, 0.2}}};
  std::stringstream ss;
  write_trajectory_csv(ss, traj);
  EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), "t,U,V,W,A,B,C");
  const auto back = parse_trajectory_csv(ss);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].ego.C, 0.2);
  const EgoMotion mid = ego_at(back, 0.25);
  EXPECT_DOUBLE_EQ(mid.U, 0.25);
  EXPECT_DOUBLE_EQ(mid.C, 0.05);
  EXPECT_EQ(ego_at(back, -1).U, 0.0);
  EXPECT_EQ(ego_at(back, 5).U, 1.0);
}

TEST(Trajectory, Errors) {
  std::istringstream bad("t,U,V,W,A,B,C\n1,0,0,1,0,0,0\n0.5,0,0,1,0,0,0\n");
  const std::string msg = message_of([&] { parse_trajectory_csv(bad, "traj.csv"); });
  EXPECT_NE(msg.find("traj.csv:3:"), std::string::npos) << msg;
  EXPECT_EQ(code_of([] { ego_at(std::vector<TrajectorySample>{}, 0.0); }), ErrorCode::InsufficientData);
}

}  // namespace
}  // namespace faith
