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

// Scenario files: strict JSON <-> ScenarioConfig.
//
// Every key is optional and falls back to the library default, but unknown
// keys and wrongly-typed values are rejected with their dotted key path.

#pragma once

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

#include "exosim/sim.hpp"

namespace exosim {

using Json = nlohmann::json;

namespace config_detail {

inline std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

inline std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

inline void require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
}

inline void allow_keys(const Json& j, const std::string& path, std::initializer_list<const char*> keys) {
  require_object(j, path);
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : keys) ok = ok || k == a;
    if (!ok) throw ConfigError(join(path, k), "unknown key");
  }
}

inline double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

inline void read(const Json& obj, const char* key, const std::string& path, double& out) {
  if (obj.contains(key)) out = number(obj.at(key), join(path, key));
}

inline void read(const Json& obj, const char* key, const std::string& path, bool& out) {
  if (!obj.contains(key)) return;
  if (!obj.at(key).is_boolean()) throw ConfigError(join(path, key), "expected true or false");
  out = obj.at(key).get<bool>();
}

inline void read(const Json& obj, const char* key, const std::string& path, std::string& out) {
  if (!obj.contains(key)) return;
  if (!obj.at(key).is_string()) throw ConfigError(join(path, key), "expected a string");
  out = obj.at(key).get<std::string>();
}

inline void read_int(const Json& obj, const char* key, const std::string& path, int& out) {
  if (!obj.contains(key)) return;
  const Json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(join(path, key), "expected an integer");
  out = v.get<int>();
}

template <int N>
Eigen::Matrix<double, N, 1> vector(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(N))
    throw ConfigError(path, "expected an array of " + std::to_string(N) + " numbers");
  Eigen::Matrix<double, N, 1> v;
  for (int i = 0; i < N; ++i) v[i] = number(j[static_cast<std::size_t>(i)], index(path, static_cast<std::size_t>(i)));
  return v;
}

template <int N>
void read(const Json& obj, const char* key, const std::string& path, Eigen::Matrix<double, N, 1>& out) {
  if (obj.contains(key)) out = vector<N>(obj.at(key), join(path, key));
}

/// A per-joint vector given either as an array or as one number for all.
template <int N>
void read_broadcast(const Json& obj, const char* key, const std::string& path, Eigen::Matrix<double, N, 1>& out) {
  if (!obj.contains(key)) return;
  const Json& v = obj.at(key);
  if (v.is_number())
    out.setConstant(v.get<double>());
  else
    out = vector<N>(v, join(path, key));
}

template <int R, int C>
Eigen::Matrix<double, R, C> matrix(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(R))
    throw ConfigError(path, "expected " + std::to_string(R) + " rows");
  Eigen::Matrix<double, R, C> m;
  for (int r = 0; r < R; ++r) m.row(r) = vector<C>(j[static_cast<std::size_t>(r)], index(path, static_cast<std::size_t>(r))).transpose();
  return m;
}

template <typename Derived>
Json to_array(const Eigen::MatrixBase<Derived>& v) {
  Json a = Json::array();
  if constexpr (Derived::ColsAtCompileTime == 1) {
    for (Eigen::Index i = 0; i < v.rows(); ++i) a.push_back(v(i, 0));
  } else {
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < v.cols(); ++c) row.push_back(v(r, c));
      a.push_back(row);
    }
  }
  return a;
}

inline Port port_from(const Json& j, const std::string& path) {
  if (j == "cuff") return Port::Cuff;
  if (j == "handle") return Port::Handle;
  throw ConfigError(path, "expected \"cuff\" or \"handle\"");
}

// Impedance ----------------------------------------------------------------

inline bool block_isotropic(const Matrix6& m, int start) {
  const double d = m(start, start);
  return m(start + 1, start + 1) == d && m(start + 2, start + 2) == d;
}

inline bool diagonal_form(const PortImpedance& p) {
  for (const Matrix6* m : {&p.mass, &p.damping, &p.stiffness}) {
    if (*m != Matrix6(m->diagonal().asDiagonal())) return false;
    if (!block_isotropic(*m, 0) || !block_isotropic(*m, 3)) return false;
  }
  return true;
}

inline PortImpedance impedance_from(const Json& j, const std::string& path, PortImpedance imp) {
  allow_keys(j, path, {"linear", "angular", "mass", "damping", "stiffness", "equilibrium"});
  const bool blocks = j.contains("linear") || j.contains("angular");
  const bool full = j.contains("mass") || j.contains("damping") || j.contains("stiffness");
  if (blocks && full) throw ConfigError(path, "use either linear/angular blocks or full 6x6 matrices, not both");
  auto set_block = [](Matrix6& m, int start, double v) {
    for (int i = 0; i < 3; ++i) m(start + i, start + i) = v;
  };
  if (j.contains("linear")) {
    const std::string lp = join(path, "linear");
    allow_keys(j.at("linear"), lp, {"mass", "damping", "stiffness"});
    double m = imp.mass(0, 0), b = imp.damping(0, 0), k = imp.stiffness(0, 0);
    read(j.at("linear"), "mass", lp, m);
    read(j.at("linear"), "damping", lp, b);
    read(j.at("linear"), "stiffness", lp, k);
    set_block(imp.mass, 0, m);
    set_block(imp.damping, 0, b);
    set_block(imp.stiffness, 0, k);
  }
  if (j.contains("angular")) {
    const std::string ap = join(path, "angular");
    allow_keys(j.at("angular"), ap, {"inertia", "damping", "stiffness"});
    double m = imp.mass(3, 3), b = imp.damping(3, 3), k = imp.stiffness(3, 3);
    read(j.at("angular"), "inertia", ap, m);
    read(j.at("angular"), "damping", ap, b);
    read(j.at("angular"), "stiffness", ap, k);
    set_block(imp.mass, 3, m);
    set_block(imp.damping, 3, b);
    set_block(imp.stiffness, 3, k);
  }
  if (j.contains("mass")) imp.mass = matrix<6, 6>(j.at("mass"), join(path, "mass"));
  if (j.contains("damping")) imp.damping = matrix<6, 6>(j.at("damping"), join(path, "damping"));
  if (j.contains("stiffness")) imp.stiffness = matrix<6, 6>(j.at("stiffness"), join(path, "stiffness"));
  if (j.contains("equilibrium")) {
    const std::string ep = join(path, "equilibrium");
    const Json& e = j.at("equilibrium");
    allow_keys(e, ep, {"position", "rotation"});
    Pose pose;
    if (e.contains("position")) pose.translation = vector<3>(e.at("position"), join(ep, "position"));
    if (e.contains("rotation")) {
      pose.rotation = matrix<3, 3>(e.at("rotation"), join(ep, "rotation"));
      if (orthonormality_error(pose.rotation) > 1e-9 || pose.rotation.determinant() < 0.0)
        throw ConfigError(join(ep, "rotation"), "expected a proper rotation matrix");
    }
    imp.equilibrium = pose;
  }
  try {
    imp.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(path, e.what());
  }
  return imp;
}

inline Json impedance_to(const PortImpedance& p) {
  Json j;
  if (diagonal_form(p)) {
    j["linear"] = {{"mass", p.mass(0, 0)}, {"damping", p.damping(0, 0)}, {"stiffness", p.stiffness(0, 0)}};
    j["angular"] = {{"inertia", p.mass(3, 3)}, {"damping", p.damping(3, 3)}, {"stiffness", p.stiffness(3, 3)}};
  } else {
    j["mass"] = to_array(p.mass);
    j["damping"] = to_array(p.damping);
    j["stiffness"] = to_array(p.stiffness);
  }
  if (p.equilibrium)
    j["equilibrium"] = {{"position", to_array(p.equilibrium->translation)},
                        {"rotation", to_array(p.equilibrium->rotation)}};
  return j;
}

inline HumanPort human_from(const Json& j, const std::string& path, HumanPort h) {
  allow_keys(j, path, {"stiffness", "damping", "angular_stiffness", "angular_damping", "intent"});
  read(j, "stiffness", path, h.stiffness);
  read(j, "damping", path, h.damping);
  read(j, "angular_stiffness", path, h.angular_stiffness);
  read(j, "angular_damping", path, h.angular_damping);
  if (j.contains("intent")) {
    const std::string ip = join(path, "intent");
    if (!j.at("intent").is_array()) throw ConfigError(ip, "expected an array of waypoints");
    h.intent.clear();
    for (std::size_t i = 0; i < j.at("intent").size(); ++i) {
      const Json& w = j.at("intent")[i];
      const std::string wp = index(ip, i);
      allow_keys(w, wp, {"t", "position"});
      if (!w.contains("t") || !w.contains("position")) throw ConfigError(wp, "waypoint needs t and position");
      h.intent.push_back({number(w.at("t"), join(wp, "t")), vector<3>(w.at("position"), join(wp, "position"))});
    }
  }
  return h;
}

inline Json human_to(const HumanPort& h) {
  Json j = {{"stiffness", h.stiffness},
            {"damping", h.damping},
            {"angular_stiffness", h.angular_stiffness},
            {"angular_damping", h.angular_damping}};
  Json intent = Json::array();
  for (const auto& w : h.intent) intent.push_back({{"t", w.t}, {"position", to_array(w.position)}});
  j["intent"] = intent;
  return j;
}

}  // namespace config_detail

/// Parses and validates a scenario document.
inline ScenarioConfig config_from_json(const Json& root) {
  using namespace config_detail;
  ScenarioConfig c;
  allow_keys(root, "", {"body", "joint_limits", "inertia", "plant", "rates", "controller", "human", "probe", "sensor",
                        "reference", "render", "initial_q", "duration", "seed", "output"});

  if (root.contains("body")) {
    const Json& b = root.at("body");
    allow_keys(b, "body", {"p1", "p2", "p3", "p4", "p5", "p6", "side", "beta"});
    read(b, "p1", "body", c.body.p1);
    read(b, "p2", "body", c.body.p2);
    read(b, "p3", "body", c.body.p3);
    read(b, "p4", "body", c.body.p4);
    read(b, "p5", "body", c.body.p5);
    read(b, "p6", "body", c.body.p6);
    read(b, "beta", "body", c.body.beta);
    if (b.contains("side")) {
      if (b.at("side") == "left")
        c.body.side = Side::Left;
      else if (b.at("side") == "right")
        c.body.side = Side::Right;
      else
        throw ConfigError("body.side", "expected \"left\" or \"right\"");
    }
  }
  if (root.contains("joint_limits")) {
    const Json& l = root.at("joint_limits");
    allow_keys(l, "joint_limits", {"lower", "upper"});
    read(l, "lower", "joint_limits", c.limits.lower);
    read(l, "upper", "joint_limits", c.limits.upper);
  }
  if (root.contains("inertia")) {
    const Json& in = root.at("inertia");
    allow_keys(in, "inertia", {"body_mass", "link_radius", "links"});
    read(in, "body_mass", "inertia", c.inertia.body_mass);
    read(in, "link_radius", "inertia", c.inertia.link_radius);
    if (in.contains("links")) {
      const Json& links = in.at("links");
      if (!links.is_array() || links.size() != kNumJoints) throw ConfigError("inertia.links", "expected 8 link entries");
      InertiaTable t;
      for (std::size_t i = 0; i < kNumJoints; ++i) {
        const std::string lp = index("inertia.links", i);
        const Json& l = links[i];
        allow_keys(l, lp, {"mass", "com", "inertia"});
        if (!l.contains("mass") || !l.contains("com") || !l.contains("inertia"))
          throw ConfigError(lp, "link needs mass, com and inertia");
        t.links[i].mass = number(l.at("mass"), join(lp, "mass"));
        t.links[i].com = vector<3>(l.at("com"), join(lp, "com"));
        t.links[i].inertia = matrix<3, 3>(l.at("inertia"), join(lp, "inertia"));
      }
      c.inertia.links = t;
    }
  }
  if (root.contains("plant")) {
    const Json& p = root.at("plant");
    allow_keys(p, "plant", {"viscous_friction", "gravity", "enforce_limits"});
    read(p, "viscous_friction", "plant", c.friction);
    read(p, "gravity", "plant", c.gravity);
    read(p, "enforce_limits", "plant", c.enforce_limits);
  }
  if (root.contains("rates")) {
    const Json& r = root.at("rates");
    allow_keys(r, "rates", {"sensor_hz", "control_hz", "scale"});
    read(r, "sensor_hz", "rates", c.rates.sensor_hz);
    read(r, "control_hz", "rates", c.rates.control_hz);
    read(r, "scale", "rates", c.rates.scale);
  }
  if (root.contains("controller")) {
    const Json& k = root.at("controller");
    allow_keys(k, "controller", {"mode", "impedance", "gains", "resolution", "limits"});
    ControllerConfig& cc = c.controller;
    if (k.contains("mode")) {
      if (k.at("mode") == "pure-admittance")
        cc.mode = ControlMode::PureAdmittance;
      else if (k.at("mode") == "assist")
        cc.mode = ControlMode::Assist;
      else
        throw ConfigError("controller.mode", "expected \"pure-admittance\" or \"assist\"");
    }
    if (k.contains("impedance")) {
      const Json& im = k.at("impedance");
      allow_keys(im, "controller.impedance", {"cuff", "handle"});
      for (Port p : kPorts)
        if (im.contains(port_name(p)))
          cc.impedance[p] = impedance_from(im.at(port_name(p)), join("controller.impedance", port_name(p)), cc.impedance[p]);
    }
    if (k.contains("gains")) {
      const Json& g = k.at("gains");
      allow_keys(g, "controller.gains", {"kp", "kv"});
      read_broadcast(g, "kp", "controller.gains", cc.gains.kp);
      read_broadcast(g, "kv", "controller.gains", cc.gains.kv);
    }
    if (k.contains("resolution")) {
      const Json& r = k.at("resolution");
      allow_keys(r, "controller.resolution", {"lambda", "weights"});
      read(r, "lambda", "controller.resolution", cc.lambda);
      if (r.contains("weights")) {
        const Json& w = r.at("weights");
        allow_keys(w, "controller.resolution.weights", {"cuff", "handle"});
        for (Port p : kPorts) read_broadcast(w, port_name(p), "controller.resolution.weights", cc.weights[p]);
      }
    }
    if (k.contains("limits")) {
      const Json& l = k.at("limits");
      allow_keys(l, "controller.limits", {"torque", "force", "windup"});
      read(l, "torque", "controller.limits", cc.torque_limit);
      read(l, "force", "controller.limits", cc.force_limit);
      read(l, "windup", "controller.limits", cc.windup_limit);
    }
  }
  if (root.contains("human")) {
    const Json& h = root.at("human");
    allow_keys(h, "human", {"cuff", "handle"});
    for (Port p : kPorts)
      if (h.contains(port_name(p)))
        c.human.ports[p] = human_from(h.at(port_name(p)), join("human", port_name(p)), c.human.ports[p]);
  }
  if (root.contains("probe")) {
    const Json& p = root.at("probe");
    allow_keys(p, "probe", {"enabled", "port", "axis", "amplitude", "frequency_hz"});
    read(p, "enabled", "probe", c.human.probe.enabled);
    if (p.contains("port")) c.human.probe.port = port_from(p.at("port"), "probe.port");
    read_int(p, "axis", "probe", c.human.probe.axis);
    read(p, "amplitude", "probe", c.human.probe.amplitude);
    read(p, "frequency_hz", "probe", c.human.probe.frequency_hz);
  }
  if (root.contains("sensor")) {
    const Json& s = root.at("sensor");
    allow_keys(s, "sensor", {"force_noise", "torque_noise", "force_quantum", "torque_quantum", "filter"});
    read(s, "force_noise", "sensor", c.sensor.force_noise);
    read(s, "torque_noise", "sensor", c.sensor.torque_noise);
    read(s, "force_quantum", "sensor", c.sensor.force_quantum);
    read(s, "torque_quantum", "sensor", c.sensor.torque_quantum);
    if (s.contains("filter")) {
      if (s.at("filter") == "latest")
        c.sensor.filter = WrenchFilter::Latest;
      else if (s.at("filter") == "average")
        c.sensor.filter = WrenchFilter::Average;
      else
        throw ConfigError("sensor.filter", "expected \"latest\" or \"average\"");
    }
  }
  if (root.contains("reference")) {
    const Json& r = root.at("reference");
    allow_keys(r, "reference", {"rhythm", "ik", "segments"});
    if (r.contains("rhythm")) {
      allow_keys(r.at("rhythm"), "reference.rhythm", {"r1", "r2"});
      read(r.at("rhythm"), "r1", "reference.rhythm", c.reference.rhythm.r1);
      read(r.at("rhythm"), "r2", "reference.rhythm", c.reference.rhythm.r2);
    }
    if (r.contains("ik")) {
      const Json& ik = r.at("ik");
      allow_keys(ik, "reference.ik", {"lambda", "step", "tolerance", "max_iterations"});
      read(ik, "lambda", "reference.ik", c.reference.ik.lambda);
      read(ik, "step", "reference.ik", c.reference.ik.step);
      read(ik, "tolerance", "reference.ik", c.reference.ik.tolerance);
      read_int(ik, "max_iterations", "reference.ik", c.reference.ik.max_iterations);
    }
    if (r.contains("segments")) {
      const Json& segs = r.at("segments");
      if (!segs.is_array()) throw ConfigError("reference.segments", "expected an array");
      for (std::size_t i = 0; i < segs.size(); ++i) {
        const std::string sp = index("reference.segments", i);
        allow_keys(segs[i], sp, {"goal", "duration"});
        if (!segs[i].contains("goal") || !segs[i].contains("duration")) throw ConfigError(sp, "segment needs goal and duration");
        c.reference.segments.push_back(
            {vector<3>(segs[i].at("goal"), join(sp, "goal")), number(segs[i].at("duration"), join(sp, "duration"))});
      }
    }
  }
  if (root.contains("render")) {
    const Json& r = root.at("render");
    allow_keys(r, "render", {"settings", "frequencies_hz", "transient_periods", "measure_periods"});
    if (r.contains("settings")) {
      const Json& s = r.at("settings");
      if (!s.is_array()) throw ConfigError("render.settings", "expected an array");
      for (std::size_t i = 0; i < s.size(); ++i) {
        const std::string sp = index("render.settings", i);
        allow_keys(s[i], sp, {"name", "impedance"});
        RenderSetting rs;
        rs.name = "setting" + std::to_string(i);
        read(s[i], "name", sp, rs.name);
        if (!s[i].contains("impedance")) throw ConfigError(sp, "setting needs an impedance");
        rs.impedance = impedance_from(s[i].at("impedance"), join(sp, "impedance"), c.controller.impedance[Port::Handle]);
        c.render.settings.push_back(rs);
      }
    }
    if (r.contains("frequencies_hz")) {
      const Json& f = r.at("frequencies_hz");
      if (!f.is_array()) throw ConfigError("render.frequencies_hz", "expected an array");
      for (std::size_t i = 0; i < f.size(); ++i)
        c.render.frequencies_hz.push_back(number(f[i], index("render.frequencies_hz", i)));
    }
    read(r, "transient_periods", "render", c.render.transient_periods);
    read(r, "measure_periods", "render", c.render.measure_periods);
  }
  read(root, "initial_q", "", c.initial_q);
  read(root, "duration", "", c.duration);
  if (root.contains("seed")) {
    if (!root.at("seed").is_number_unsigned()) throw ConfigError("seed", "expected a non-negative integer");
    c.seed = root.at("seed").get<std::uint64_t>();
  }
  if (root.contains("output")) {
    const Json& o = root.at("output");
    allow_keys(o, "output", {"log", "metrics", "report", "series", "trajectory"});
    read(o, "log", "output", c.output.log);
    read(o, "metrics", "output", c.output.metrics);
    read(o, "report", "output", c.output.report);
    read(o, "series", "output", c.output.series);
    read(o, "trajectory", "output", c.output.trajectory);
  }
  c.validate();
  return c;
}

inline ScenarioConfig config_from_string(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  return config_from_json(j);
}

inline ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_string(ss.str());
}

/// Complete document with every default filled in.
inline Json config_to_json(const ScenarioConfig& c) {
  using namespace config_detail;
  Json j;
  j["body"] = {{"p1", c.body.p1}, {"p2", c.body.p2}, {"p3", c.body.p3}, {"p4", c.body.p4}, {"p5", c.body.p5},
               {"p6", c.body.p6}, {"side", c.body.side == Side::Left ? "left" : "right"}, {"beta", c.body.beta}};
  j["joint_limits"] = {{"lower", to_array(c.limits.lower)}, {"upper", to_array(c.limits.upper)}};
  j["inertia"] = {{"body_mass", c.inertia.body_mass}, {"link_radius", c.inertia.link_radius}};
  if (c.inertia.links) {
    Json links = Json::array();
    for (const auto& l : c.inertia.links->links)
      links.push_back({{"mass", l.mass}, {"com", to_array(l.com)}, {"inertia", to_array(l.inertia)}});
    j["inertia"]["links"] = links;
  }
  j["plant"] = {{"viscous_friction", to_array(c.friction)}, {"gravity", to_array(c.gravity)},
                {"enforce_limits", c.enforce_limits}};
  j["rates"] = {{"sensor_hz", c.rates.sensor_hz}, {"control_hz", c.rates.control_hz}, {"scale", c.rates.scale}};
  const ControllerConfig& cc = c.controller;
  j["controller"] = {
      {"mode", cc.mode == ControlMode::Assist ? "assist" : "pure-admittance"},
      {"impedance", {{"cuff", impedance_to(cc.impedance[Port::Cuff])}, {"handle", impedance_to(cc.impedance[Port::Handle])}}},
      {"gains", {{"kp", to_array(cc.gains.kp)}, {"kv", to_array(cc.gains.kv)}}},
      {"resolution",
       {{"lambda", cc.lambda},
        {"weights", {{"cuff", to_array(cc.weights[Port::Cuff])}, {"handle", to_array(cc.weights[Port::Handle])}}}}},
      {"limits", {{"torque", cc.torque_limit}, {"force", cc.force_limit}, {"windup", cc.windup_limit}}}};
  j["human"] = {{"cuff", human_to(c.human.ports[Port::Cuff])}, {"handle", human_to(c.human.ports[Port::Handle])}};
  const ProbeConfig& p = c.human.probe;
  j["probe"] = {{"enabled", p.enabled}, {"port", port_name(p.port)}, {"axis", p.axis},
                {"amplitude", p.amplitude}, {"frequency_hz", p.frequency_hz}};
  j["sensor"] = {{"force_noise", c.sensor.force_noise}, {"torque_noise", c.sensor.torque_noise},
                 {"force_quantum", c.sensor.force_quantum}, {"torque_quantum", c.sensor.torque_quantum},
                 {"filter", c.sensor.filter == WrenchFilter::Average ? "average" : "latest"}};
  Json segs = Json::array();
  for (const auto& s : c.reference.segments) segs.push_back({{"goal", to_array(s.goal)}, {"duration", s.duration}});
  j["reference"] = {{"rhythm", {{"r1", c.reference.rhythm.r1}, {"r2", c.reference.rhythm.r2}}},
                    {"ik", {{"lambda", c.reference.ik.lambda}, {"step", c.reference.ik.step},
                            {"tolerance", c.reference.ik.tolerance}, {"max_iterations", c.reference.ik.max_iterations}}},
                    {"segments", segs}};
  Json settings = Json::array();
  for (const auto& s : c.render.settings) settings.push_back({{"name", s.name}, {"impedance", impedance_to(s.impedance)}});
  j["render"] = {{"settings", settings}, {"frequencies_hz", c.render.frequencies_hz},
                 {"transient_periods", c.render.transient_periods}, {"measure_periods", c.render.measure_periods}};
  j["initial_q"] = to_array(c.initial_q);
  j["duration"] = c.duration;
  j["seed"] = c.seed;
  j["output"] = {{"log", c.output.log}, {"metrics", c.output.metrics}, {"report", c.output.report},
                 {"series", c.output.series}, {"trajectory", c.output.trajectory}};
  return j;
}

}  // namespace exosim
