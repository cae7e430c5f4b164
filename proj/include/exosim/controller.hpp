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

// Admittance-based interaction controller.
//
// Each control tick:
//   1. measured port wrenches drive a virtual mass-damper-spring per port,
//      whose velocity is the desired port twist;
//   2. the stacked port twists are resolved into active joint rates by
//      weighted damped least squares;
//   3. the rates are integrated into a joint-space setpoint, optionally on
//      top of a reference trajectory sample;
//   4. PD tracking plus gravity feedforward gives the joint torques.

#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "exosim/dynamics.hpp"

namespace exosim {

/// Commanded impedance of one port, [linear; angular] blocks.
struct PortImpedance {
  Matrix6 mass = Matrix6::Identity();
  Matrix6 damping = Matrix6::Zero();
  Matrix6 stiffness = Matrix6::Zero();
  /// Equilibrium pose of the stiffness term; the port pose at controller
  /// start when unset.
  std::optional<Pose> equilibrium;

  static PortImpedance diagonal(double mass, double damping, double stiffness, double inertia,
                                double angular_damping, double angular_stiffness) {
    PortImpedance p;
    Vector6 m, b, k;
    m << mass, mass, mass, inertia, inertia, inertia;
    b << damping, damping, damping, angular_damping, angular_damping, angular_damping;
    k << stiffness, stiffness, stiffness, angular_stiffness, angular_stiffness, angular_stiffness;
    p.mass = m.asDiagonal();
    p.damping = b.asDiagonal();
    p.stiffness = k.asDiagonal();
    return p;
  }

  void validate() const {
    auto symmetric = [](const Matrix6& a) {
      return (a - a.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + a.cwiseAbs().maxCoeff());
    };
    auto min_eig = [](const Matrix6& a) {
      return Eigen::SelfAdjointEigenSolver<Matrix6>(a).eigenvalues().minCoeff();
    };
    if (!mass.allFinite() || !damping.allFinite() || !stiffness.allFinite())
      throw ParameterError("impedance entries must be finite");
    if (!symmetric(mass) || !(min_eig(mass) > 0.0))
      throw ParameterError("virtual mass must be symmetric positive definite");
    if (!symmetric(damping) || min_eig(damping) < -1e-12)
      throw ParameterError("virtual damping must be symmetric positive semidefinite");
    if (!symmetric(stiffness) || min_eig(stiffness) < -1e-12)
      throw ParameterError("virtual stiffness must be symmetric positive semidefinite");
  }

  /// Commanded |Z(jω)| = |K − Mω² + jBω| along one axis.
  double magnitude(int axis, double omega) const {
    const double k = stiffness(axis, axis), m = mass(axis, axis), b = damping(axis, axis);
    return std::abs(std::complex<double>(k - m * omega * omega, b * omega));
  }
};

using ImpedanceParams = PerPort<PortImpedance>;

inline ImpedanceParams default_impedance() {
  ImpedanceParams p;
  p[Port::Cuff] = PortImpedance::diagonal(2.0, 20.0, 0.0, 0.05, 1.0, 0.0);
  p[Port::Handle] = PortImpedance::diagonal(1.0, 20.0, 0.0, 0.02, 0.5, 0.0);
  return p;
}

struct PDGains {
  Eigen::Matrix<double, kNumActive, 1> kp = Eigen::Matrix<double, kNumActive, 1>::Constant(50.0);
  Eigen::Matrix<double, kNumActive, 1> kv = Eigen::Matrix<double, kNumActive, 1>::Constant(5.0);

  void validate() const {
    if ((kp.array() < 0.0).any() || !kp.allFinite()) throw ParameterError("kp must be non-negative");
    if (!(kv.array() > 0.0).all() || !kv.allFinite()) throw ParameterError("kv must be positive on every active joint");
  }
};

enum class ControlMode { PureAdmittance, Assist };

struct ControllerConfig {
  ImpedanceParams impedance = default_impedance();
  PDGains gains;
  ControlMode mode = ControlMode::PureAdmittance;
  double lambda = 1e-3;  ///< rate-resolution damping
  PerPort<Vector6> weights{{Vector6::Constant(0.5), Vector6::Constant(1.0)}};
  double torque_limit = 40.0;  ///< revolute joints (N·m)
  double force_limit = 200.0;  ///< prismatic joint (N)
  double windup_limit = 0.1;   ///< bound on |q_des − q| seen by Kp

  void validate() const {
    for (Port p : kPorts) {
      impedance[p].validate();
      if ((weights[p].array() < 0.0).any()) throw ParameterError("row weights must be non-negative");
    }
    gains.validate();
    if (!(lambda > 0.0)) throw ParameterError("lambda must be positive");
    if (!(torque_limit > 0.0) || !(force_limit > 0.0)) throw ParameterError("actuator limits must be positive");
    if (!(windup_limit > 0.0)) throw ParameterError("windup limit must be positive");
  }
};

// Admittance ---------------------------------------------------------------

/// Virtual dynamics of one port in error coordinates relative to the
/// equilibrium: [p − p0; φ] with R = exp(φ)·R0.
struct PortAdmittance {
  Vector6 x = Vector6::Zero();
  Vector6 v = Vector6::Zero();
};

struct AdmittanceState {
  PerPort<PortAdmittance> ports;
  double t = 0.0;

  /// Starts each port at its actual pose relative to its equilibrium.
  static AdmittanceState at_rest(const PerPort<Pose>& port_poses, const PerPort<Pose>& equilibria, double t0 = 0.0) {
    AdmittanceState s;
    s.t = t0;
    for (Port p : kPorts) {
      s.ports[p].x.head<3>() = port_poses[p].translation - equilibria[p].translation;
      if (port_poses[p].rotation != equilibria[p].rotation)
        s.ports[p].x.tail<3>() = log_so3(port_poses[p].rotation * equilibria[p].rotation.transpose());
    }
    return s;
  }
};

/// One semi-implicit Euler step of M_d v̇ + B_d v + K_d x = F per port
/// (velocity first, then pose with the new velocity). Returns v_des.
inline PerPort<Twist> admittance_step(AdmittanceState& state, const PortWrenches& measured,
                                      const ImpedanceParams& params, double dt) {
  if (!(dt > 0.0)) throw ParameterError("admittance dt must be positive");
  PerPort<Twist> v_des;
  for (Port p : kPorts) {
    PortAdmittance& s = state.ports[p];
    const PortImpedance& imp = params[p];
    const Vector6 rhs = measured[p] - imp.damping * s.v - imp.stiffness * s.x;
    s.v += dt * imp.mass.llt().solve(rhs);
    s.x.head<3>() += dt * s.v.head<3>();
    const Vector3 dphi = dt * s.v.tail<3>();
    if (!dphi.isZero(0.0)) s.x.tail<3>() = log_so3(exp_so3(dphi) * exp_so3(s.x.tail<3>()));
    v_des[p] = s.v;
  }
  state.t += dt;
  return v_des;
}

// Control step --------------------------------------------------------------

struct ReferenceSample {
  double t = 0.0;
  Vector8 q_des = Vector8::Zero();
  Vector8 qd_des = Vector8::Zero();
  Pose x_des;
};

struct ControllerState {
  AdmittanceState admittance;
  Vector8 anchor = Vector8::Zero();  ///< setpoint origin in pure-admittance mode
  Vector8 offset = Vector8::Zero();  ///< integrated admittance rates
  std::optional<double> last_t;

  /// Controller at rest at the measured configuration.
  static ControllerState start(const DHChain& chain, const ControllerConfig& cfg, const Vector8& q, double t0 = 0.0) {
    const FkResult fk = forward_kinematics(chain, q);
    PerPort<Pose> poses, eq;
    for (Port p : kPorts) {
      poses[p] = fk.port(p);
      eq[p] = cfg.impedance[p].equilibrium.value_or(fk.port(p));
    }
    ControllerState s;
    s.admittance = AdmittanceState::at_rest(poses, eq, t0);
    s.anchor = q;
    return s;
  }
};

struct ControlOutput {
  Vector8 tau = Vector8::Zero();
  Vector8 q_des = Vector8::Zero();
  Vector8 qd_des = Vector8::Zero();
  PerPort<Twist> v_des;
  Vector8 gravity = Vector8::Zero();
  int clamped = 0;  ///< active joints whose torque hit the limit this tick
};

/// One controller tick at time t with period dt.
inline ControlOutput control_step(const PlantModel& model, const JointState& state, const PortWrenches& wrenches,
                                  const ControllerConfig& cfg, ControllerState& ctl,
                                  const std::optional<ReferenceSample>& reference, double t, double dt) {
  if (ctl.last_t && !(t > *ctl.last_t))
    throw TimestampError("control timestamp did not advance (" + std::to_string(t) + " after " +
                         std::to_string(*ctl.last_t) + ")");
  ctl.last_t = t;

  ControlOutput out;
  out.v_des = admittance_step(ctl.admittance, wrenches, cfg.impedance, dt);

  const DHChain& chain = model.chain;
  const FkResult fk = forward_kinematics(chain, state.q);

  int engaged = 0;
  for (Port p : kPorts)
    if (!cfg.weights[p].isZero(0.0)) ++engaged;
  if (engaged > 0) {
    Eigen::MatrixXd j(6 * engaged, kNumJoints);
    Eigen::VectorXd v(6 * engaged), w(6 * engaged);
    int row = 0;
    for (Port p : kPorts) {
      if (cfg.weights[p].isZero(0.0)) continue;
      j.middleRows(row, 6) = jacobian(chain, fk, p);
      v.segment(row, 6) = out.v_des[p];
      w.segment(row, 6) = cfg.weights[p];
      row += 6;
    }
    // The swinging passive wrist is a disturbance, not something the active
    // joints should cancel: feeding J_p·qd_p back into the solve couples the
    // unactuated pendulum into the position loop and destabilizes it.
    out.qd_des = damped_pinv_solve(j, v, cfg.lambda, w);
  }
  out.qd_des.tail<kNumPassive>() = state.qd.tail<kNumPassive>();

  ctl.offset.head<kNumActive>() += dt * out.qd_des.head<kNumActive>();
  const bool assist = cfg.mode == ControlMode::Assist && reference.has_value();
  const Vector8 base = assist ? reference->q_des : ctl.anchor;
  Vector8 q_des = base + ctl.offset;
  // Keep the setpoint inside the joint limits and stop integrating past them.
  const Vector8 q_lim = chain.limits.clamp(q_des);
  ctl.offset.head<kNumActive>() += (q_lim - q_des).head<kNumActive>();
  q_des = q_lim;
  if (assist) out.qd_des.head<kNumActive>() += reference->qd_des.head<kNumActive>();
  q_des.tail<kNumPassive>() = state.q.tail<kNumPassive>();
  out.q_des = q_des;

  out.gravity = gravity_vector(chain, model.inertia, fk, model.gravity);
  for (int i = 0; i < kNumActive; ++i) {
    const double err = std::clamp(q_des[i] - state.q[i], -cfg.windup_limit, cfg.windup_limit);
    double tau = out.gravity[i] + cfg.gains.kp[i] * err + cfg.gains.kv[i] * (out.qd_des[i] - state.qd[i]);
    const double limit = chain.kind(i) == JointKind::Prismatic ? cfg.force_limit : cfg.torque_limit;
    if (std::abs(tau) > limit) {
      tau = std::copysign(limit, tau);
      ++out.clamped;
    }
    out.tau[i] = tau;
  }
  return out;
}

// Rendered impedance --------------------------------------------------------

struct ProbeSample {
  double t = 0.0;
  double force = 0.0;         ///< probe-axis interaction force (N or N·m)
  double displacement = 0.0;  ///< port coordinate along the probe axis (m or rad)
};

struct ImpedanceEstimate {
  double magnitude = 0.0;  ///< |F| / |x| (N/m)
  double phase = 0.0;      ///< arg(F/x) (rad)
  double damping = 0.0;    ///< |F| / |v| = magnitude / ω (N·s/m)
  double force_amplitude = 0.0;
  double displacement_amplitude = 0.0;
};

/// Fits a·sin ωt + b·cos ωt (+ offset, + drift for the displacement) to the
/// force and displacement after discarding `transient_periods`, and returns
/// the complex ratio F/x.
inline ImpedanceEstimate estimate_rendered_impedance(const std::vector<ProbeSample>& log, double omega,
                                                     double transient_periods = 2.0, double min_periods = 5.0) {
  if (!(omega > 0.0)) throw ParameterError("probe frequency must be positive");
  const double period = 2.0 * kPi / omega;
  const double t_start = (log.empty() ? 0.0 : log.front().t) + transient_periods * period;
  std::vector<const ProbeSample*> kept;
  for (const auto& s : log)
    if (s.t >= t_start - 1e-12) kept.push_back(&s);
  // Each sample stands for one sampling interval, so n samples span n·Δt.
  const double spacing = kept.size() > 1 ? (kept.back()->t - kept.front()->t) / static_cast<double>(kept.size() - 1) : 0.0;
  if (kept.size() < 8 || kept.back()->t - kept.front()->t + spacing < min_periods * period * (1.0 - 1e-9))
    throw ParameterError("probe log must cover at least " + std::to_string(min_periods) +
                         " periods after the transient");

  const Eigen::Index n = static_cast<Eigen::Index>(kept.size());
  const double t0 = kept.front()->t;
  Eigen::MatrixXd a(n, 4);
  Eigen::VectorXd f(n), x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = kept[static_cast<std::size_t>(i)]->t;
    a(i, 0) = std::sin(omega * t);
    a(i, 1) = std::cos(omega * t);
    a(i, 2) = 1.0;
    a(i, 3) = (t - t0) / period;
    f[i] = kept[static_cast<std::size_t>(i)]->force;
    x[i] = kept[static_cast<std::size_t>(i)]->displacement;
  }
  const Eigen::VectorXd cf = a.leftCols(3).colPivHouseholderQr().solve(f);
  const Eigen::VectorXd cx = a.colPivHouseholderQr().solve(x);
  // a·sin + b·cos = Re((b − j a) e^{jωt})
  const std::complex<double> fp(cf[1], -cf[0]);
  const std::complex<double> xp(cx[1], -cx[0]);

  ImpedanceEstimate e;
  e.force_amplitude = std::abs(fp);
  e.displacement_amplitude = std::abs(xp);
  if (!(e.displacement_amplitude >= 1e-9))
    throw ImmeasurableError("displacement amplitude " + std::to_string(e.displacement_amplitude) +
                            " is below the 1e-9 measurement floor");
  const std::complex<double> z = fp / xp;
  e.magnitude = std::abs(z);
  e.phase = std::arg(z);
  e.damping = e.magnitude / omega;
  return e;
}

}  // namespace exosim
