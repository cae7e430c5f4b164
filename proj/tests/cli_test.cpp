// Copyright 2026 The exosim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "exosim/config.hpp"

namespace exosim {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  fs::path dir;

  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir = fs::temp_directory_path() / (std::string("exosim_cli_") + info->name());
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  Outcome run(const std::string& args, const std::string& env = "") const {
    const fs::path err = dir / "stderr.txt";
    const std::string cmd = env + " '" + std::string(EXOSIM_CLI) + "' " + args + " 2>'" + err.string() + "'";
    Outcome r;
    FILE* p = popen(cmd.c_str(), "r");
    if (p == nullptr) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err);
    return r;
  }

  fs::path write(const std::string& name, const std::string& text) const {
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p;
  }

  static std::string scenario(const char* name) { return std::string(EXOSIM_SCENARIOS) + "/" + name; }
};

TEST_F(CliTest, ForwardKinematicsPrintsBothPorts) {
  const Outcome r = run("fk 0 0 0 0 0 0 0 0");
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  const auto handle = j.at("handle").at("translation").get<std::vector<double>>();
  EXPECT_NEAR(handle[0], 0.0, 1e-12);
  EXPECT_NEAR(handle[1], 0.3, 1e-12);
  EXPECT_NEAR(handle[2], 0.3 - 0.28 - 0.25 - 0.08, 1e-12);
  EXPECT_NEAR(j.at("cuff").at("translation")[2].get<double>(), 0.3 - 0.14, 1e-12);
  EXPECT_EQ(j.at("handle").at("quaternion_wxyz").size(), 4u);
  EXPECT_DOUBLE_EQ(j.at("gh_elevation").get<double>(), 0.0);
}

TEST_F(CliTest, ForwardKinematicsRejectsBadJointVectors) {
  Outcome r = run("fk 0 0 0 0 0 0 0");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("expected 8 joint values"), std::string::npos) << r.err;
  r = run("fk 0 0 0 0 0 3 0 0");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("joint 6 (elbow)"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, JacobianHasSixRowsOfEight) {
  const Outcome r = run("jacobian 0 0.05 -0.3 0.2 0.1 1.2 -0.5 0.1");
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  for (const char* port : {"cuff", "handle"}) {
    ASSERT_EQ(j.at(port).size(), 6u);
    for (const auto& row : j.at(port)) EXPECT_EQ(row.size(), 8u);
  }
  for (int i = 0; i < 6; ++i) EXPECT_EQ(j.at("cuff")[i][7].get<double>(), 0.0);
}

TEST_F(CliTest, SimulateWritesArtifactsAndPureJson) {
  const fs::path cfg = write("idle.json", R"({"duration": 1.0, "seed": 3})");
  const fs::path log = dir / "run.csv", metrics = dir / "metrics.json";
  const Outcome r = run("simulate '" + cfg.string() + "' --log '" + log.string() + "' --metrics '" + metrics.string() + "'",
                    "EXOSIM_LOG_LEVEL=debug");
  ASSERT_EQ(r.code, 0) << r.err;
  const Json out = Json::parse(r.out);  // stdout carries nothing but the metrics
  EXPECT_EQ(out.at("status"), "ok");
  EXPECT_LT(out.at("rmse_rad").get<double>(), 1e-3);
  EXPECT_EQ(Json::parse(slurp(metrics)), out);
  EXPECT_NE(r.err.find("info"), std::string::npos);
  const std::string csv = slurp(log);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 1000);
  EXPECT_EQ(csv.rfind("t,q1,", 0), 0u);
}

TEST_F(CliTest, RepeatedRunsProduceIdenticalLogs) {
  const fs::path cfg = write("noisy.json", R"({"duration": 0.5, "seed": 11,
      "sensor": {"force_noise": 0.2, "torque_noise": 0.01},
      "human": {"handle": {"stiffness": 30}}})");
  const fs::path a = dir / "a.csv", b = dir / "b.csv";
  ASSERT_EQ(run("simulate '" + cfg.string() + "' --log '" + a.string() + "'").code, 0);
  ASSERT_EQ(run("simulate '" + cfg.string() + "' --log '" + b.string() + "'").code, 0);
  const std::string sa = slurp(a);
  EXPECT_FALSE(sa.empty());
  EXPECT_EQ(sa, slurp(b));
}

TEST_F(CliTest, ConfigErrorsExitThreeWithTheKeyPath) {
  const fs::path bad = write("bad.json", R"({"controller": {"gains": {"kpp": 1}}})");
  Outcome r = run("simulate '" + bad.string() + "'");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("controller.gains.kpp"), std::string::npos) << r.err;
  const fs::path broken = write("broken.json", "{\"duration\": ");
  r = run("simulate '" + broken.string() + "'");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("malformed JSON"), std::string::npos) << r.err;
  EXPECT_EQ(run("simulate '" + (dir / "missing.json").string() + "'").code, 3);
  EXPECT_EQ(run("frobnicate").code, 3);
}

TEST_F(CliTest, UnreachableReachExitsTwo) {
  const fs::path cfg = write("reach.json", R"({"duration": 1.0,
      "controller": {"mode": "assist"},
      "reference": {"segments": [{"goal": [1.5, 0.3, 0.3], "duration": 1.0}]}})");
  const Outcome r = run("simulate '" + cfg.string() + "'");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(Json::parse(r.out).at("status"), "ik-failed");
  EXPECT_NE(r.err.find("unreachable"), std::string::npos) << r.err;
  EXPECT_EQ(run("gen-reference '" + cfg.string() + "'").code, 2);
}

TEST_F(CliTest, RenderImpedanceTracksCommandedDamping) {
  const fs::path report = dir / "report.json", series = dir / "series.csv";
  const Outcome r = run("render-impedance '" + scenario("render.json") + "' --report '" + report.string() + "' --series '" +
                    series.string() + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j.at("ordered_as_commanded").get<bool>());
  ASSERT_EQ(j.at("points").size(), 2u);
  for (const auto& p : j.at("points")) {
    const double est = p.at("damping").get<double>(), cmd = p.at("commanded_damping").get<double>();
    EXPECT_LT(std::abs(est - cmd) / cmd, 0.10) << p.dump();
  }
  EXPECT_EQ(Json::parse(slurp(report)), j);
  const std::string csv = slurp(series);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST_F(CliTest, SilentProbeIsImmeasurable) {
  ScenarioConfig c = load_config(scenario("render.json"));
  c.human.probe.amplitude = 0.0;
  const fs::path cfg = write("silent.json", config_to_json(c).dump());
  const Outcome r = run("render-impedance '" + cfg.string() + "'");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("immeasurable"), std::string::npos) << r.err;
}

TEST_F(CliTest, CheckPassesAndCatchesAnInjectedFault) {
  Outcome r = run("check");
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  int rows = 0;
  std::istringstream lines(r.out);
  for (std::string line; std::getline(lines, line);)
    if (line.find(" PASS ") != std::string::npos) ++rows;
  EXPECT_GE(rows, 4);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);

  r = run("check --fault-jacobian-column 5");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
  EXPECT_NE(r.err.find("jacobian_fd"), std::string::npos) << r.err;
}

TEST_F(CliTest, DumpConfigRoundTrips) {
  const Outcome a = run("--dump-config -c '" + scenario("reach.json") + "'");
  ASSERT_EQ(a.code, 0) << a.err;
  const fs::path dumped = write("dumped.json", a.out);
  const Outcome b = run("--dump-config -c '" + dumped.string() + "'");
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, GenReferenceEmitsOneRowPerControlTick) {
  const Outcome r = run("gen-reference '" + scenario("reach.json") + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("t,q1,", 0), 0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1 + 4001);
  const fs::path out = dir / "traj.csv";
  const Outcome f = run("gen-reference '" + scenario("reach.json") + "' -o '" + out.string() + "'");
  ASSERT_EQ(f.code, 0) << f.err;
  EXPECT_EQ(Json::parse(f.out).at("samples").get<int>(), 4001);
  EXPECT_EQ(slurp(out), r.out);
}

}  // namespace
}  // namespace exosim
