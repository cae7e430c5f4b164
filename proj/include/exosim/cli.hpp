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

// Command implementations behind the exosim tool. Each command writes its
// JSON (or CSV) payload to `out` and reports human-readable notices through
// `notify`; argument parsing lives in tools/exosim.cpp.

#pragma once

#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "exosim/check.hpp"
#include "exosim/io.hpp"

namespace exosim {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitRuntime = 2, kExitConfig = 3 };

enum class Notice { Debug, Info, Warn, Error };
using Notifier = std::function<void(Notice, const std::string&)>;

inline const char* joint_name(int i) {
  static constexpr const char* kNames[kNumJoints] = {"girdle_revolute", "girdle_prismatic", "gh_1",
                                                     "gh_2",            "gh_3",             "elbow",
                                                     "wrist_flexion",   "wrist_deviation"};
  return kNames[i];
}

/// Parses and range-checks a joint vector given on the command line.
inline Vector8 joint_argument(const std::vector<double>& values, const JointLimits& limits) {
  if (values.size() != static_cast<std::size_t>(kNumJoints))
    throw ConfigError("q", "expected 8 joint values, got " + std::to_string(values.size()));
  Vector8 q;
  for (int i = 0; i < kNumJoints; ++i) q[i] = values[static_cast<std::size_t>(i)];
  const int bad = limits.first_violation(q);
  if (bad >= 0)
    throw ConfigError("q[" + std::to_string(bad) + "]",
                      "joint " + std::to_string(bad + 1) + " (" + joint_name(bad) + ") value " + format_double(q[bad]) +
                          " is outside [" + format_double(limits.lower[bad]) + ", " + format_double(limits.upper[bad]) +
                          "]");
  return q;
}

inline Json pose_to_json(const Pose& p) {
  const Eigen::Quaterniond quat(p.rotation);
  return {{"translation", config_detail::to_array(p.translation)},
          {"quaternion_wxyz", {quat.w(), quat.x(), quat.y(), quat.z()}}};
}

inline int cmd_fk(const ScenarioConfig& cfg, const std::vector<double>& values, std::ostream& out) {
  const DHChain chain = build_chain(cfg.body, cfg.limits);
  const Vector8 q = joint_argument(values, chain.limits);
  const FkResult fk = forward_kinematics(chain, q);
  const Json j = {{"q", config_detail::to_array(q)},
                  {"cuff", pose_to_json(fk.cuff)},
                  {"handle", pose_to_json(fk.handle)},
                  {"gh_elevation", gh_elevation(fk)}};
  out << j.dump(2) << '\n';
  return kExitOk;
}

inline int cmd_jacobian(const ScenarioConfig& cfg, const std::vector<double>& values, std::ostream& out) {
  const DHChain chain = build_chain(cfg.body, cfg.limits);
  const Vector8 q = joint_argument(values, chain.limits);
  const FkResult fk = forward_kinematics(chain, q);
  Json j = {{"q", config_detail::to_array(q)}};
  for (Port p : kPorts) j[port_name(p)] = config_detail::to_array(jacobian(chain, fk, p));
  out << j.dump(2) << '\n';
  return kExitOk;
}

namespace cli_detail {

inline std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("output", "cannot open " + path + " for writing");
  return f;
}

}  // namespace cli_detail

/// Runs the scenario, writes the log and metrics, prints the metrics.
inline int cmd_simulate(const ScenarioConfig& cfg, std::ostream& out, const Notifier& notify) {
  notify(Notice::Info, "simulating " + format_double(cfg.duration) + " s at " +
                           format_double(cfg.rates.sensor_rate()) + " Hz sensor / " +
                           format_double(cfg.rates.control_rate()) + " Hz control");
  const ScenarioResult r = run_scenario(cfg);
  // Artifacts are written even after a failure so the partial log survives.
  if (!cfg.output.log.empty()) {
    std::ofstream f = cli_detail::open_output(cfg.output.log);
    write_log_csv(f, r.log);
  }
  const Json metrics = metrics_to_json(r);
  if (!cfg.output.metrics.empty()) {
    std::ofstream f = cli_detail::open_output(cfg.output.metrics);
    f << metrics.dump(2) << '\n';
  }
  if (r.metrics.clamp_count > 0)
    notify(Notice::Warn, std::to_string(r.metrics.clamp_count) + " torque clamp events");
  if (r.metrics.limit_events > 0)
    notify(Notice::Warn, std::to_string(r.metrics.limit_events) + " joint-limit grazes");
  if (!r.metrics.impedance_error.empty()) notify(Notice::Warn, r.metrics.impedance_error);
  out << metrics.dump(2) << '\n';
  if (r.status != RunStatus::Ok) {
    notify(Notice::Error, r.error);
    return kExitRuntime;
  }
  return kExitOk;
}

/// Writes the reference trajectory CSV to `path`, or to `out` when empty.
inline int cmd_gen_reference(const ScenarioConfig& cfg, const std::string& path, std::ostream& out,
                             const Notifier& notify) {
  if (cfg.reference.segments.empty()) throw ConfigError("reference.segments", "no reach segments to generate");
  const DHChain chain = build_chain(cfg.body, cfg.limits);
  const auto samples = generate_segments(chain, cfg.reference.rhythm, cfg.initial_q, cfg.reference.segments,
                                         cfg.rates.control_dt(), cfg.reference.ik);
  notify(Notice::Info, std::to_string(samples.size()) + " reference samples");
  if (path.empty()) {
    write_trajectory_csv(out, samples);
  } else {
    std::ofstream f = cli_detail::open_output(path);
    write_trajectory_csv(f, samples);
    const Json j = {{"samples", samples.size()}, {"duration", samples.back().t}, {"path", path}};
    out << j.dump(2) << '\n';
  }
  return kExitOk;
}

struct RenderPoint {
  std::string setting;
  double frequency_hz = 0.0;
  double commanded_magnitude = 0.0;
  double commanded_damping = 0.0;
  PortImpedanceEstimate estimate;
  long clamp_count = 0;
};

struct RenderReport {
  std::vector<RenderPoint> points;
  bool ordered = true;  ///< estimates ordered as commanded at every frequency
};

/// Scenario for one sweep point: the setting's impedance at the probe port,
/// long enough for the transient plus the measurement window.
inline ScenarioConfig render_scenario(const ScenarioConfig& base, const RenderSetting& setting, double frequency_hz) {
  ScenarioConfig c = base;
  c.controller.impedance[base.human.probe.port] = setting.impedance;
  c.human.probe.frequency_hz = frequency_hz;
  const double periods = base.render.transient_periods + base.render.measure_periods;
  const double ticks = std::ceil(periods / frequency_hz * c.rates.control_rate() - 1e-9);
  c.duration = ticks / c.rates.control_rate();
  c.output = {};
  return c;
}

inline RenderReport render_impedance(const ScenarioConfig& cfg, const Notifier& notify = [](Notice, const std::string&) {}) {
  if (!cfg.human.probe.enabled) throw ConfigError("probe.enabled", "render-impedance needs an enabled probe");
  if (cfg.render.settings.empty()) throw ConfigError("render.settings", "at least one impedance setting is required");
  std::vector<double> freqs = cfg.render.frequencies_hz;
  if (freqs.empty()) freqs.push_back(cfg.human.probe.frequency_hz);
  const int axis = cfg.human.probe.axis;

  RenderReport report;
  for (const auto& setting : cfg.render.settings) {
    for (double f : freqs) {
      const ScenarioConfig c = render_scenario(cfg, setting, f);
      notify(Notice::Info, "setting " + setting.name + " at " + format_double(f) + " Hz");
      const ScenarioResult r = run_scenario(c);
      if (r.status != RunStatus::Ok) throw SimulationDiverged(r.metrics.sensor_ticks, r.error);
      if (!r.metrics.impedance_error.empty()) throw ImmeasurableError(r.metrics.impedance_error);
      const double omega = 2.0 * kPi * f;
      RenderPoint p;
      p.setting = setting.name;
      p.frequency_hz = f;
      p.commanded_magnitude = setting.impedance.magnitude(axis, omega);
      p.commanded_damping = p.commanded_magnitude / omega;
      p.estimate = r.metrics.impedance_estimates.front();
      p.clamp_count = r.metrics.clamp_count;
      if (p.clamp_count > 0) notify(Notice::Warn, setting.name + ": " + std::to_string(p.clamp_count) + " torque clamps");
      report.points.push_back(p);
    }
  }
  for (const auto& a : report.points)
    for (const auto& b : report.points) {
      if (a.frequency_hz != b.frequency_hz || !(a.commanded_magnitude < b.commanded_magnitude)) continue;
      if (!(a.estimate.estimate.magnitude < b.estimate.estimate.magnitude)) report.ordered = false;
    }
  return report;
}

inline Json render_report_to_json(const RenderReport& report) {
  Json points = Json::array();
  for (const auto& p : report.points) {
    Json e = estimate_to_json(p.estimate);
    e["setting"] = p.setting;
    e["commanded_magnitude"] = p.commanded_magnitude;
    e["commanded_damping"] = p.commanded_damping;
    e["relative_error"] = std::abs(p.estimate.estimate.magnitude - p.commanded_magnitude) / p.commanded_magnitude;
    e["clamp_count"] = p.clamp_count;
    points.push_back(e);
  }
  return {{"points", points}, {"ordered_as_commanded", report.ordered}};
}

inline void write_render_series(std::ostream& out, const RenderReport& report) {
  out << "setting,frequency_hz,magnitude,phase,commanded_magnitude\n";
  for (const auto& p : report.points)
    out << p.setting << ',' << format_double(p.frequency_hz) << ',' << format_double(p.estimate.estimate.magnitude)
        << ',' << format_double(p.estimate.estimate.phase) << ',' << format_double(p.commanded_magnitude) << '\n';
}

inline int cmd_render_impedance(const ScenarioConfig& cfg, std::ostream& out, const Notifier& notify) {
  const RenderReport report = render_impedance(cfg, notify);
  const Json j = render_report_to_json(report);
  if (!cfg.output.report.empty()) {
    std::ofstream f = cli_detail::open_output(cfg.output.report);
    f << j.dump(2) << '\n';
  }
  if (!cfg.output.series.empty()) {
    std::ofstream f = cli_detail::open_output(cfg.output.series);
    write_render_series(f, report);
  }
  if (!report.ordered) notify(Notice::Warn, "estimated impedances are not ordered as commanded");
  out << j.dump(2) << '\n';
  return kExitOk;
}

/// Prints one row per oracle; nonzero exit if any fails.
inline int cmd_check(const ScenarioConfig& cfg, const CheckOptions& opt, std::ostream& out, const Notifier& notify) {
  const auto rows = run_checks(cfg.plant(), opt);
  out << std::left << std::setw(18) << "oracle" << std::setw(8) << "result" << std::setw(14) << "error"
      << std::setw(10) << "tolerance" << "  detail\n";
  bool ok = true;
  for (const auto& r : rows) {
    out << std::left << std::setw(18) << r.name << std::setw(8) << (r.passed ? "PASS" : "FAIL") << std::setw(14)
        << std::setprecision(3) << std::scientific << r.error << std::setw(10) << r.tolerance << std::defaultfloat
        << "  " << r.detail << '\n';
    if (!r.passed) {
      notify(Notice::Error, "oracle " + r.name + " failed");
      ok = false;
    }
  }
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace exosim
