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

#include <gtest/gtest.h>

#include "exosim/config.hpp"

namespace exosim {
namespace {

std::string error_path(const std::string& text) {
  try {
    config_from_string(text);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<accepted>";
}

TEST(Config, EmptyObjectGivesDefaults) {
  const ScenarioConfig c = config_from_string("{}");
  const ScenarioConfig d;
  EXPECT_EQ(c.body, d.body);
  EXPECT_EQ(c.initial_q, d.initial_q);
  EXPECT_EQ(c.controller.gains.kp, d.controller.gains.kp);
  EXPECT_EQ(c.rates.ratio(), 5);
  EXPECT_DOUBLE_EQ(c.rates.control_rate(), 1000.0);
  EXPECT_DOUBLE_EQ(c.rates.sensor_rate(), 5000.0);
}

TEST(Config, DefaultsRoundTripThroughJson) {
  const Json a = config_to_json(ScenarioConfig{});
  const ScenarioConfig back = config_from_json(a);
  EXPECT_EQ(config_to_json(back).dump(), a.dump());
}

TEST(Config, NonDefaultValuesRoundTrip) {
  const std::string text = R"({
    "body": {"p4": 0.3, "side": "left", "beta": 0.4},
    "plant": {"viscous_friction": [0.1, 0.2, 0.1, 0.1, 0.1, 0.1, 0.02, 0.02], "enforce_limits": false},
    "rates": {"sensor_hz": 40000, "control_hz": 8000, "scale": 8},
    "controller": {
      "mode": "assist",
      "gains": {"kp": [10, 20, 30, 40, 50, 60], "kv": 3},
      "resolution": {"lambda": 0.01, "weights": {"cuff": 0.25, "handle": [1, 1, 1, 0.5, 0.5, 0.5]}},
      "impedance": {"cuff": {"mass": [[1,0,0,0,0,0],[0,2,0,0,0,0],[0,0,3,0,0,0],[0,0,0,0.1,0,0],[0,0,0,0,0.1,0],[0,0,0,0,0,0.1]]}}
    },
    "human": {"handle": {"stiffness": 40, "intent": [{"t": 0, "position": [0.1, 0.3, 0]}, {"t": 1, "position": [0.2, 0.3, 0]}]}},
    "sensor": {"force_noise": 0.1, "filter": "average"},
    "reference": {"segments": [{"goal": [0.2, 0.3, -0.2], "duration": 2}]},
    "seed": 42,
    "duration": 2.5
  })";
  const ScenarioConfig c = config_from_string(text);
  EXPECT_EQ(c.body.side, Side::Left);
  EXPECT_DOUBLE_EQ(c.controller.gains.kp[5], 60.0);
  EXPECT_TRUE((c.controller.gains.kv.array() == 3.0).all());
  EXPECT_TRUE((c.controller.weights[Port::Cuff].array() == 0.25).all());
  EXPECT_DOUBLE_EQ(c.controller.impedance[Port::Cuff].mass(2, 2), 3.0);
  EXPECT_EQ(c.controller.mode, ControlMode::Assist);
  EXPECT_EQ(c.sensor.filter, WrenchFilter::Average);
  EXPECT_EQ(c.human.ports[Port::Handle].intent.size(), 2u);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_FALSE(c.enforce_limits);
  const Json j = config_to_json(c);
  EXPECT_EQ(config_to_json(config_from_json(j)).dump(), j.dump());
}

TEST(Config, FixturesLoad) {
  for (const char* name : {"idle.json", "render.json", "reach.json"}) {
    const ScenarioConfig c = load_config(std::string(EXOSIM_SCENARIOS) + "/" + name);
    EXPECT_GT(c.duration, 0.0) << name;
  }
  const ScenarioConfig render = load_config(std::string(EXOSIM_SCENARIOS) + "/render.json");
  ASSERT_EQ(render.render.settings.size(), 2u);
  EXPECT_DOUBLE_EQ(render.render.settings[1].impedance.damping(2, 2), 60.0);
  // Settings inherit the angular block from the controller's handle impedance.
  EXPECT_DOUBLE_EQ(render.render.settings[1].impedance.mass(4, 4), 0.02);
  EXPECT_TRUE(render.human.probe.enabled);
}

TEST(Config, UnknownKeysAreRejectedWithTheirPath) {
  EXPECT_EQ(error_path(R"({"bogus": 1})"), "bogus");
  EXPECT_EQ(error_path(R"({"controller": {"gains": {"kpp": 1}}})"), "controller.gains.kpp");
  EXPECT_EQ(error_path(R"({"controller": {"impedance": {"handle": {"linear": {"spring": 1}}}}})"),
            "controller.impedance.handle.linear.spring");
  EXPECT_EQ(error_path(R"({"human": {"cuff": {"intent": [{"t": 0, "position": [0,0,0], "x": 1}]}}})"),
            "human.cuff.intent[0].x");
}

TEST(Config, TypeErrorsNameTheKey) {
  EXPECT_EQ(error_path(R"({"duration": "long"})"), "duration");
  EXPECT_EQ(error_path(R"({"body": {"p4": [1]}})"), "body.p4");
  EXPECT_EQ(error_path(R"({"initial_q": [0, 0, 0]})"), "initial_q");
  EXPECT_EQ(error_path(R"({"controller": {"gains": {"kp": [1, 2]}}})"), "controller.gains.kp");
  EXPECT_EQ(error_path(R"({"probe": {"port": "elbow"}})"), "probe.port");
  EXPECT_EQ(error_path(R"({"seed": -3})"), "seed");
  EXPECT_EQ(error_path(R"({"reference": {"segments": [{"goal": [0, 0, 0]}]}})"), "reference.segments[0]");
}

TEST(Config, ValuesAreValidated) {
  EXPECT_EQ(error_path(R"({"body": {"p5": -0.2}})"), "body");
  EXPECT_EQ(error_path(R"({"controller": {"gains": {"kv": 0}}})"), "controller");
  EXPECT_EQ(error_path(R"({"initial_q": [0, 0, 0, 0, 0, 3, 0, 0]})"), "initial_q");
  EXPECT_EQ(error_path(R"({"rates": {"sensor_hz": 12345}})"), "rates");
  EXPECT_EQ(error_path(R"({"controller": {"impedance": {"cuff": {"linear": {"mass": 0}}}}})"),
            "controller.impedance.cuff");
  EXPECT_EQ(error_path(R"({"controller": {"impedance": {"cuff": {"linear": {"mass": 1}, "mass": 1}}}})"),
            "controller.impedance.cuff");
}

TEST(Config, MalformedJsonIsAConfigError) {
  try {
    config_from_string("{\"duration\": 1,");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("malformed JSON"), std::string::npos);
  }
  EXPECT_THROW(load_config("/nonexistent/scenario.json"), ConfigError);
}

}  // namespace
}  // namespace exosim
