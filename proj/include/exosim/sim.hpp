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

// Fixed-step closed-loop simulation.
//
// A single-threaded executive runs two logical rate groups. Every sensor
// tick samples the port wrenches and advances the plant; every
// `sensor_rate / control_rate`-th sensor tick first runs the controller on
// the freshest wrench snapshot. Torques are held between control ticks.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "exosim/reference.hpp"

namespace exosim {

struct RateConfig {
  double sensor_hz = 50000.0;
  double control_hz = 10000.0;
  double scale = 10.0;  ///< both rates are divided by this

  double sensor_rate() const { return sensor_hz / scale; }
  double control_rate() const { return control_hz / scale; }
  double sensor_dt() const { return scale / sensor_hz; }
  double control_dt() const { return scale / control_hz; }
  long ratio() const { return std::lround(sensor_hz / control_hz); }

  void validate() const {
    if (!(sensor_hz > 0.0) || !(control_hz > 0.0) || !(scale > 0.0))
      throw ParameterError("rates and scale must be positive");
    const double r = sensor_hz / control_hz;
    if (r < 1.0 - 1e-12 || std::abs(r - std::round(r)) > 1e-9 * r)
      throw ParameterError("sensor rate must be an integer multiple of the control rate");
  }
};

enum class WrenchFilter { Latest, Average };

struct IntentWaypoint {
  double t = 0.0;
  Vector3 position = Vector3::Zero();
};

/// Spring-damper coupling between a port and the virtual human's limb.
struct HumanPort {
  double stiffness = 0.0;          ///< N/m
  double damping = 0.0;            ///< N·s/m
  double angular_stiffness = 0.0;  ///< N·m/rad
  double angular_damping = 0.0;    ///< N·m·s/rad
  /// Intended port position vs time, piecewise linear and held past the
  /// ends. Empty: hold the initial port pose.
  std::vector<IntentWaypoint> intent;

  void validate() const {
    if (stiffness < 0.0 || damping < 0.0 || angular_stiffness < 0.0 || angular_damping < 0.0)
      throw ParameterError("human coupling stiffness and damping must be non-negative");
    for (std::size_t i = 1; i < intent.size(); ++i)
      if (!(intent[i].t > intent[i - 1].t)) throw ParameterError("intent waypoints must have increasing times");
  }
};

struct ProbeConfig {
  bool enabled = false;
  Port port = Port::Handle;
  int axis = 2;  ///< 0..5 over [fx fy fz mx my mz]
  double amplitude = 0.0;
  double frequency_hz = 0.5;

  Wrench at(double t) const {
    Wrench w = Wrench::Zero();
    if (enabled) w[axis] = amplitude * std::sin(2.0 * kPi * frequency_hz * t);
    return w;
  }

  void validate() const {
    if (axis < 0 || axis > 5) throw ParameterError("probe axis must be in 0..5");
    if (!(frequency_hz > 0.0)) throw ParameterError("probe frequency must be positive");
    if (!std::isfinite(amplitude)) throw ParameterError("probe amplitude must be finite");
  }
};

struct HumanArmModel {
  PerPort<HumanPort> ports;
  ProbeConfig probe;
};

/// Sensor imperfections. All zero means exact sensing.
struct SensorConfig {
  double force_noise = 0.0;   ///< N, std dev
  double torque_noise = 0.0;  ///< N·m, std dev
  double force_quantum = 0.0;
  double torque_quantum = 0.0;
  WrenchFilter filter = WrenchFilter::Latest;

  void validate() const {
    if (force_noise < 0.0 || torque_noise < 0.0 || force_quantum < 0.0 || torque_quantum < 0.0)
      throw ParameterError("sensor noise and quantization must be non-negative");
  }
};

/// Per-port poses the human holds on to when no intent path is given.
struct HumanAnchors {
  PerPort<Pose> poses;
};

namespace detail {

inline Vector3 intent_position(const HumanPort& h, const Pose& anchor, double t, Vector3* velocity) {
  velocity->setZero();
  if (h.intent.empty()) return anchor.translation;
  if (t <= h.intent.front().t) return h.intent.front().position;
  if (t >= h.intent.back().t) return h.intent.back().position;
  std::size_t i = 1;
  while (h.intent[i].t < t) ++i;
  const auto& a = h.intent[i - 1];
  const auto& b = h.intent[i];
  const double s = (t - a.t) / (b.t - a.t);
  *velocity = (b.position - a.position) / (b.t - a.t);
  return a.position + s * (b.position - a.position);
}

inline double quantize(double v, double q) { return q > 0.0 ? q * std::round(v / q) : v; }

}  // namespace detail

/// Interaction wrenches at both ports: human spring-damper pull toward the
/// intent pose plus the probe, in world frame at the port origin.
inline PortWrenches sense_wrench(const DHChain& chain, const JointState& s, const HumanArmModel& human,
                                 const HumanAnchors& anchors, double t, const SensorConfig& sensor = {},
                                 std::mt19937_64* rng = nullptr) {
  const FkResult fk = forward_kinematics(chain, s.q);
  PortWrenches w;
  for (Port p : kPorts) {
    const HumanPort& h = human.ports[p];
    Wrench f = Wrench::Zero();
    if (h.stiffness != 0.0 || h.damping != 0.0 || h.angular_stiffness != 0.0 || h.angular_damping != 0.0) {
      const Twist v = jacobian(chain, fk, p) * s.qd;
      Vector3 v_int;
      const Vector3 x_int = detail::intent_position(h, anchors.poses[p], t, &v_int);
      const Pose& port = fk.port(p);
      f.head<3>() = h.stiffness * (x_int - port.translation) + h.damping * (v_int - v.head<3>());
      Vector3 rot_err = Vector3::Zero();
      if (port.rotation != anchors.poses[p].rotation)
        rot_err = log_so3(anchors.poses[p].rotation * port.rotation.transpose());
      f.tail<3>() = h.angular_stiffness * rot_err - h.angular_damping * v.tail<3>();
    }
    if (human.probe.enabled && human.probe.port == p) f += human.probe.at(t);
    if (rng != nullptr && (sensor.force_noise > 0.0 || sensor.torque_noise > 0.0)) {
      std::normal_distribution<double> n(0.0, 1.0);
      for (int i = 0; i < 6; ++i) f[i] += (i < 3 ? sensor.force_noise : sensor.torque_noise) * n(*rng);
    }
    for (int i = 0; i < 6; ++i) f[i] = detail::quantize(f[i], i < 3 ? sensor.force_quantum : sensor.torque_quantum);
    w[p] = f;
  }
  return w;
}

// Plant integration ---------------------------------------------------------

struct StepOptions {
  JointLock lock = kNoLock;
  bool enforce_limits = true;
  double max_position = 1e3;
  double max_velocity = 1e3;
};

struct StepResult {
  JointState next;
  bool limit_event = false;
  /// Energy at the start of the step with the time-centered velocity
  /// (qd_n + qd_{n+1})/2; see energy_audit().
  double kinetic = 0.0;
  double potential = 0.0;
  /// Work done by actuators, port wrenches and friction over the step.
  double work = 0.0;
};

/// One semi-implicit Euler step: the velocity is advanced first, then the
/// position with the new velocity. Velocity-product terms (Coriolis and
/// friction) use the mid-step velocity, found by fixed-point iteration.
inline StepResult step_plant(const PlantModel& model, const JointState& s, const Vector8& tau,
                             const PortWrenches& wrenches, double dt, const StepOptions& opt = {},
                             long tick = 0) {
  const DHChain& chain = model.chain;
  const FkResult fk = forward_kinematics(chain, s.q);
  const Matrix8 m = mass_matrix(chain, model.inertia, fk);
  Vector8 applied = tau - gravity_vector(chain, model.inertia, fk, model.gravity);
  for (Port p : kPorts)
    if (!wrenches[p].isZero(0.0)) applied.noalias() += jacobian(chain, fk, p).transpose() * wrenches[p];
  for (int i = kNumActive; i < kNumJoints; ++i)
    if (tau[i] != 0.0) throw ParameterError("passive joint " + std::to_string(i + 1) + " cannot carry actuator torque");

  std::array<int, kNumJoints> idx{};
  int nfree = 0;
  for (int i = 0; i < kNumJoints; ++i)
    if (!opt.lock[static_cast<std::size_t>(i)]) idx[static_cast<std::size_t>(nfree++)] = i;
  Eigen::MatrixXd mf(nfree, nfree);
  for (int a = 0; a < nfree; ++a)
    for (int b = 0; b < nfree; ++b)
      mf(a, b) = m(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
  Eigen::LLT<Eigen::MatrixXd> llt(mf);
  if (llt.info() != Eigen::Success) throw std::logic_error("mass matrix is not positive definite");

  Vector8 qd0 = s.qd;
  for (int i = 0; i < kNumJoints; ++i)
    if (opt.lock[static_cast<std::size_t>(i)]) qd0[i] = 0.0;
  Vector8 qd1 = qd0;
  Vector8 mid = qd0;
  for (int it = 0; it < 3; ++it) {
    mid = 0.5 * (qd0 + qd1);
    const Vector8 rhs = applied - coriolis_bias(chain, model.inertia, fk, mid) -
                        model.viscous_friction.cwiseProduct(mid);
    Eigen::VectorXd bf(nfree);
    for (int a = 0; a < nfree; ++a) bf[a] = rhs[idx[static_cast<std::size_t>(a)]];
    const Eigen::VectorXd acc = llt.solve(bf);
    qd1 = qd0;
    for (int a = 0; a < nfree; ++a) qd1[idx[static_cast<std::size_t>(a)]] += dt * acc[a];
  }
  mid = 0.5 * (qd0 + qd1);

  StepResult r;
  r.kinetic = kinetic_energy(m, mid);
  r.potential = potential_energy(chain, model.inertia, fk, model.gravity);
  Vector8 nonconservative = tau - model.viscous_friction.cwiseProduct(mid);
  for (Port p : kPorts)
    if (!wrenches[p].isZero(0.0)) nonconservative.noalias() += jacobian(chain, fk, p).transpose() * wrenches[p];
  r.work = dt * mid.dot(nonconservative);

  r.next.qd = qd1;
  r.next.q = s.q + dt * qd1;
  if (opt.enforce_limits) {
    for (int i = 0; i < kNumJoints; ++i) {
      const double lo = chain.limits.lower[i], hi = chain.limits.upper[i];
      if (r.next.q[i] < lo || r.next.q[i] > hi) {
        r.next.q[i] = std::clamp(r.next.q[i], lo, hi);
        if ((r.next.q[i] == lo && r.next.qd[i] < 0.0) || (r.next.q[i] == hi && r.next.qd[i] > 0.0))
          r.next.qd[i] = 0.0;
        r.limit_event = true;
      }
    }
  }
  if (!r.next.q.allFinite() || !r.next.qd.allFinite() || r.next.q.cwiseAbs().maxCoeff() > opt.max_position ||
      r.next.qd.cwiseAbs().maxCoeff() > opt.max_velocity)
    throw SimulationDiverged(tick, "joint state left the sanity bounds");
  return r;
}

struct EnergyAudit {
  double max_abs_drift = 0.0;  ///< J
  double scale = 0.0;          ///< J, largest kinetic energy seen
  double relative = 0.0;       ///< max_abs_drift / scale
  JointState final_state;
};

/// Free motion (tau = 0, F = 0) from rest at q0. Energy is compared on
/// time-aligned states: the integrator's stored velocity lags the position
/// by half a step, so each sample pairs q_n with (qd_n + qd_{n+1})/2.
inline EnergyAudit energy_audit(const PlantModel& model, const Vector8& q0, double duration, double dt,
                                const Vector8& qd0 = Vector8::Zero(), const JointLock& lock = kNoLock) {
  StepOptions opt;
  opt.enforce_limits = false;
  opt.lock = lock;
  JointState s{q0, qd0};
  const long n = std::lround(duration / dt);
  EnergyAudit audit;
  double e0 = 0.0, work = 0.0;
  for (long k = 0; k < n; ++k) {
    const StepResult r = step_plant(model, s, Vector8::Zero(), PortWrenches{}, dt, opt, k);
    const double e = r.kinetic + r.potential;
    if (k == 0) e0 = e;
    audit.max_abs_drift = std::max(audit.max_abs_drift, std::abs(e - e0 - work));
    audit.scale = std::max(audit.scale, r.kinetic);
    work += r.work;
    s = r.next;
  }
  audit.relative = audit.scale > 0.0 ? audit.max_abs_drift / audit.scale : audit.max_abs_drift;
  audit.final_state = s;
  return audit;
}

// Scenario ----------------------------------------------------------------

struct InertiaConfig {
  double body_mass = kDefaultBodyMass;
  double link_radius = kDefaultLinkRadius;
  std::optional<InertiaTable> links;  ///< overrides the generated table
};

struct ReferenceConfig {
  RhythmModel rhythm;
  IkOptions ik;
  std::vector<ReachSegment> segments;
};

struct RenderSetting {
  std::string name;
  PortImpedance impedance;
};

struct RenderConfig {
  std::vector<RenderSetting> settings;
  std::vector<double> frequencies_hz;
  double transient_periods = 2.0;
  double measure_periods = 5.0;
};

struct OutputPaths {
  std::string log;
  std::string metrics;
  std::string report;
  std::string series;
  std::string trajectory;
};

struct ScenarioConfig {
  BodyParams body;
  JointLimits limits = JointLimits::defaults();
  InertiaConfig inertia;
  Vector8 friction = PlantModel::default_friction();
  Vector3 gravity = kStandardGravity;
  bool enforce_limits = true;
  RateConfig rates;
  ControllerConfig controller;
  HumanArmModel human;
  SensorConfig sensor;
  ReferenceConfig reference;
  RenderConfig render;
  Vector8 initial_q = default_posture();
  double duration = 1.0;
  std::uint64_t seed = 1;
  OutputPaths output;

  /// Elbow flexed, forearm forward, hand hanging.
  static Vector8 default_posture() {
    Vector8 q;
    q << 0.0, 0.02, 0.0, 0.0, 0.0, 1.2, -1.2, 0.0;
    return q;
  }

  PlantModel plant() const {
    const DHChain chain = build_chain(body, limits);
    PlantModel m;
    m.chain = chain;
    m.inertia = inertia.links ? *inertia.links : default_inertias(chain, inertia.body_mass, inertia.link_radius);
    m.viscous_friction = friction;
    m.gravity = gravity;
    return m;
  }

  /// Throws ConfigError carrying the key path of the first bad value.
  void validate() const;
};

inline void ScenarioConfig::validate() const {
  auto wrap = [](const char* path, auto&& fn) {
    try {
      fn();
    } catch (const ParameterError& e) {
      throw ConfigError(path, e.what());
    }
  };
  wrap("body", [&] { body.validate(); });
  wrap("joint_limits", [&] { limits.validate(); });
  wrap("inertia", [&] {
    if (!(inertia.body_mass > 0.0)) throw ParameterError("body_mass must be positive");
    if (!(inertia.link_radius > 0.0)) throw ParameterError("link_radius must be positive");
    if (inertia.links) {
      inertia.links->validate();
      if (std::abs(inertia.links->total_mass() - inertia.body_mass) > 1e-9 * inertia.body_mass)
        throw ParameterError("link masses must sum to body_mass");
    }
  });
  wrap("plant.viscous_friction", [&] {
    if ((friction.array() < 0.0).any()) throw ParameterError("friction must be non-negative");
  });
  wrap("rates", [&] { rates.validate(); });
  wrap("controller", [&] { controller.validate(); });
  wrap("human.cuff", [&] { human.ports[Port::Cuff].validate(); });
  wrap("human.handle", [&] { human.ports[Port::Handle].validate(); });
  wrap("probe", [&] { human.probe.validate(); });
  wrap("sensor", [&] { sensor.validate(); });
  wrap("reference.rhythm", [&] { reference.rhythm.validate(); });
  wrap("reference.ik", [&] { reference.ik.validate(); });
  wrap("reference.segments", [&] {
    for (const auto& s : reference.segments)
      if (!(s.duration > 0.0)) throw ParameterError("segment duration must be positive");
  });
  wrap("render", [&] {
    for (const auto& s : render.settings) s.impedance.validate();
    for (double f : render.frequencies_hz)
      if (!(f > 0.0)) throw ParameterError("frequencies must be positive");
    if (!(render.transient_periods >= 0.0) || !(render.measure_periods > 0.0))
      throw ParameterError("period counts must be positive");
  });
  wrap("initial_q", [&] {
    const int bad = limits.first_violation(initial_q);
    if (bad >= 0) throw ParameterError("joint " + std::to_string(bad + 1) + " is outside its limits");
  });
  wrap("duration", [&] {
    if (!(duration > 0.0)) throw ParameterError("duration must be positive");
    const double ticks = duration * rates.control_rate();
    if (std::abs(ticks - std::round(ticks)) > 1e-6) throw ParameterError("duration must be a whole number of control periods");
  });
}

/// Event bits in LogRecord::flags.
enum LogFlag : unsigned { kTorqueClamp = 1u, kLimitGraze = 2u };

struct LogRecord {
  double t = 0.0;
  Vector8 q, qd, tau;
  PortWrenches wrench;
  PerPort<Twist> v_des;
  Vector8 q_des;
  unsigned flags = 0;
};

struct PortImpedanceEstimate {
  Port port = Port::Handle;
  int axis = 0;
  double frequency_hz = 0.0;
  ImpedanceEstimate estimate;
};

struct Metrics {
  double rmse_rad = 0.0;       ///< RMS of q_des − q over active joints and control ticks
  double max_drift_rad = 0.0;  ///< largest |q − q(0)| on any joint
  std::vector<PortImpedanceEstimate> impedance_estimates;
  std::string impedance_error;  ///< set when the probe response was immeasurable
  double energy_drift_rel = 0.0;
  long clamp_count = 0;
  long limit_events = 0;
  long sensor_ticks = 0;
  long control_ticks = 0;
};

enum class RunStatus { Ok, Diverged, IkFailed };

struct ScenarioResult {
  std::vector<LogRecord> log;
  Metrics metrics;
  RunStatus status = RunStatus::Ok;
  std::string error;
};

/// Builds the reference the controller tracks in assist mode.
inline std::vector<ReferenceSample> scenario_reference(const ScenarioConfig& cfg, const DHChain& chain) {
  if (cfg.controller.mode != ControlMode::Assist || cfg.reference.segments.empty()) return {};
  return generate_segments(chain, cfg.reference.rhythm, cfg.initial_q, cfg.reference.segments,
                           cfg.rates.control_dt(), cfg.reference.ik);
}

inline ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  ScenarioResult result;
  const PlantModel model = cfg.plant();
  const DHChain& chain = model.chain;

  std::vector<ReferenceSample> reference;
  try {
    reference = scenario_reference(cfg, chain);
  } catch (const IkError& e) {
    result.status = RunStatus::IkFailed;
    result.error = e.what();
    return result;
  }

  const long ratio = cfg.rates.ratio();
  const double dt_s = cfg.rates.sensor_dt();
  const double dt_c = cfg.rates.control_dt();
  const long n_control = std::lround(cfg.duration * cfg.rates.control_rate());
  const long n_sensor = n_control * ratio;

  JointState s{cfg.initial_q, Vector8::Zero()};
  const FkResult fk0 = forward_kinematics(chain, s.q);
  HumanAnchors anchors;
  for (Port p : kPorts) anchors.poses[p] = fk0.port(p);
  ControllerState ctl = ControllerState::start(chain, cfg.controller, s.q);
  std::mt19937_64 rng(cfg.seed);

  StepOptions step_opt;
  step_opt.enforce_limits = cfg.enforce_limits;

  std::vector<ProbeSample> probe_log;
  const ProbeConfig& probe = cfg.human.probe;
  Wrench wrench_sum_cuff = Wrench::Zero(), wrench_sum_handle = Wrench::Zero();
  long wrench_count = 0;
  PortWrenches latest;
  Vector8 tau = Vector8::Zero();
  double sq_err = 0.0;
  double e0 = 0.0, work = 0.0, u_min = 0.0, u_max = 0.0, ke_max = 0.0, max_drift_abs = 0.0;
  unsigned pending_flags = 0;

  try {
    for (long k = 0; k < n_sensor; ++k) {
      const double t = static_cast<double>(k) * dt_s;
      latest = sense_wrench(chain, s, cfg.human, anchors, t, cfg.sensor, &rng);
      wrench_sum_cuff += latest.cuff;
      wrench_sum_handle += latest.handle;
      ++wrench_count;

      if (k % ratio == 0) {
        const long j = k / ratio;
        PortWrenches snapshot = latest;
        if (cfg.sensor.filter == WrenchFilter::Average) {
          snapshot.cuff = wrench_sum_cuff / static_cast<double>(wrench_count);
          snapshot.handle = wrench_sum_handle / static_cast<double>(wrench_count);
        }
        wrench_sum_cuff.setZero();
        wrench_sum_handle.setZero();
        wrench_count = 0;

        std::optional<ReferenceSample> ref;
        if (!reference.empty())
          ref = reference[static_cast<std::size_t>(std::min<long>(j, static_cast<long>(reference.size()) - 1))];
        const ControlOutput out = control_step(model, s, snapshot, cfg.controller, ctl, ref, t, dt_c);
        tau = out.tau;

        LogRecord rec;
        rec.t = t;
        rec.q = s.q;
        rec.qd = s.qd;
        rec.tau = out.tau;
        rec.wrench = snapshot;
        rec.v_des = out.v_des;
        rec.q_des = out.q_des;
        rec.flags = pending_flags | (out.clamped > 0 ? kTorqueClamp : 0u);
        pending_flags = 0;
        result.log.push_back(rec);

        result.metrics.clamp_count += out.clamped;
        ++result.metrics.control_ticks;
        sq_err += (out.q_des - s.q).head<kNumActive>().squaredNorm();
        if (probe.enabled) {
          const FkResult fk = forward_kinematics(chain, s.q);
          const Pose& port = fk.port(probe.port);
          double coord;
          if (probe.axis < 3) {
            coord = port.translation[probe.axis];
          } else {
            const Matrix3 rel = port.rotation * fk0.port(probe.port).rotation.transpose();
            coord = rel == Matrix3::Identity() ? 0.0 : log_so3(rel)[probe.axis - 3];
          }
          probe_log.push_back({t, snapshot[probe.port][probe.axis], coord});
        }
      }

      const StepResult r = step_plant(model, s, tau, latest, dt_s, step_opt, k);
      const double e = r.kinetic + r.potential;
      if (k == 0) {
        e0 = e;
        u_min = u_max = r.potential;
      }
      u_min = std::min(u_min, r.potential);
      u_max = std::max(u_max, r.potential);
      ke_max = std::max(ke_max, r.kinetic);
      max_drift_abs = std::max(max_drift_abs, std::abs(e - e0 - work));
      work += r.work;
      if (r.limit_event) {
        pending_flags |= kLimitGraze;
        ++result.metrics.limit_events;
      }
      s = r.next;
      ++result.metrics.sensor_ticks;
      result.metrics.max_drift_rad =
          std::max(result.metrics.max_drift_rad, (s.q - cfg.initial_q).cwiseAbs().maxCoeff());
    }
  } catch (const SimulationDiverged& e) {
    result.status = RunStatus::Diverged;
    result.error = e.what();
  }

  Metrics& m = result.metrics;
  if (m.control_ticks > 0) m.rmse_rad = std::sqrt(sq_err / static_cast<double>(m.control_ticks * kNumActive));
  const double scale = ke_max + (u_max - u_min);
  m.energy_drift_rel = scale > 0.0 ? max_drift_abs / scale : 0.0;
  if (probe.enabled && result.status == RunStatus::Ok) {
    PortImpedanceEstimate pe;
    pe.port = probe.port;
    pe.axis = probe.axis;
    pe.frequency_hz = probe.frequency_hz;
    try {
      pe.estimate = estimate_rendered_impedance(probe_log, 2.0 * kPi * probe.frequency_hz,
                                                cfg.render.transient_periods, cfg.render.measure_periods);
      m.impedance_estimates.push_back(pe);
    } catch (const ImmeasurableError& e) {
      m.impedance_error = e.what();
    } catch (const ParameterError& e) {
      m.impedance_error = e.what();
    }
  }
  return result;
}

}  // namespace exosim
