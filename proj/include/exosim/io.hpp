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

// Output files. Floats are written as the shortest decimal that parses back
// to the same double, so logs are byte-stable and lossless.

#pragma once

#include <charconv>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "exosim/config.hpp"

namespace exosim {

inline std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

namespace io_detail {

template <typename Derived>
void put(std::ostream& out, const Eigen::MatrixBase<Derived>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) out << ',' << format_double(v(i));
}

inline void names(std::ostream& out, const std::string& prefix, int n) {
  for (int i = 1; i <= n; ++i) out << ',' << prefix << i;
}

inline void names(std::ostream& out, const std::string& prefix, std::initializer_list<const char*> suffixes) {
  for (const char* s : suffixes) out << ',' << prefix << s;
}

}  // namespace io_detail

/// Header in LogRecord field order.
inline std::string log_header() {
  using namespace io_detail;
  std::ostringstream h;
  h << 't';
  names(h, "q", kNumJoints);
  names(h, "qd", kNumJoints);
  names(h, "tau", kNumJoints);
  for (Port p : kPorts) names(h, std::string(port_name(p)) + "_", {"fx", "fy", "fz", "mx", "my", "mz"});
  for (Port p : kPorts) names(h, std::string("vdes_") + port_name(p) + "_", {"vx", "vy", "vz", "wx", "wy", "wz"});
  names(h, "qdes", kNumJoints);
  h << ",flags";
  return h.str();
}

inline void write_log_csv(std::ostream& out, const std::vector<LogRecord>& log) {
  using namespace io_detail;
  out << log_header() << '\n';
  for (const auto& r : log) {
    out << format_double(r.t);
    put(out, r.q);
    put(out, r.qd);
    put(out, r.tau);
    for (Port p : kPorts) put(out, r.wrench[p]);
    for (Port p : kPorts) put(out, r.v_des[p]);
    put(out, r.q_des);
    out << ',' << r.flags << '\n';
  }
}

inline void write_trajectory_csv(std::ostream& out, const std::vector<ReferenceSample>& samples) {
  using namespace io_detail;
  out << 't';
  names(out, "q", kNumJoints);
  names(out, "qd", kNumJoints);
  out << ",x,y,z\n";
  for (const auto& s : samples) {
    out << format_double(s.t);
    put(out, s.q_des);
    put(out, s.qd_des);
    put(out, s.x_des.translation);
    out << '\n';
  }
}

inline Json estimate_to_json(const PortImpedanceEstimate& e) {
  return {{"port", port_name(e.port)},
          {"axis", e.axis},
          {"frequency_hz", e.frequency_hz},
          {"magnitude", e.estimate.magnitude},
          {"phase", e.estimate.phase},
          {"damping", e.estimate.damping},
          {"force_amplitude", e.estimate.force_amplitude},
          {"displacement_amplitude", e.estimate.displacement_amplitude}};
}

inline const char* status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Ok: return "ok";
    case RunStatus::Diverged: return "diverged";
    case RunStatus::IkFailed: return "ik-failed";
  }
  return "unknown";
}

inline Json metrics_to_json(const ScenarioResult& r) {
  const Metrics& m = r.metrics;
  Json estimates = Json::array();
  for (const auto& e : m.impedance_estimates) estimates.push_back(estimate_to_json(e));
  Json j = {{"status", status_name(r.status)},
            {"rmse_rad", m.rmse_rad},
            {"max_drift_rad", m.max_drift_rad},
            {"impedance_estimates", estimates},
            {"energy_drift_rel", m.energy_drift_rel},
            {"clamp_count", m.clamp_count},
            {"limit_events", m.limit_events},
            {"ticks", {{"sensor", m.sensor_ticks}, {"control", m.control_ticks}}}};
  if (!m.impedance_error.empty()) j["impedance_error"] = m.impedance_error;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

}  // namespace exosim
