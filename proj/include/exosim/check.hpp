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

// Built-in oracle suite. Each row compares a library computation with an
// independent reference computed here (finite differences, closed forms,
// explicit normal equations) at a fixed tolerance.

#pragma once

#include <chrono>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "exosim/io.hpp"

namespace exosim {

struct OracleResult {
  std::string name;
  double error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double seconds = 0.0;
  std::string detail;
};

struct CheckOptions {
  std::uint64_t seed = 20260101;
  int samples = 10;
  /// Negative control: adds `perturbation` to one column of the analytic
  /// handle Jacobian before comparison. The FD row must then fail.
  std::optional<int> perturb_jacobian_column;
  double perturbation = 1e-3;
  double energy_dt = 2e-5;
};

/// Uniform sample inside the joint limits.
inline Vector8 random_configuration(const JointLimits& limits, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vector8 q;
  for (int i = 0; i < kNumJoints; ++i) q[i] = limits.lower[i] + u(rng) * (limits.upper[i] - limits.lower[i]);
  return q;
}

/// Central-difference port Jacobian; the angular part is vee(Ṙ Rᵀ).
inline Matrix68 fd_jacobian(const DHChain& chain, const Vector8& q, Port port, double h = 1e-6) {
  Matrix68 j;
  const Matrix3 r0 = forward_kinematics(chain, q).port(port).rotation;
  for (int i = 0; i < kNumJoints; ++i) {
    Vector8 qp = q, qm = q;
    qp[i] += h;
    qm[i] -= h;
    const Pose pp = forward_kinematics(chain, qp).port(port);
    const Pose pm = forward_kinematics(chain, qm).port(port);
    j.block<3, 1>(0, i) = (pp.translation - pm.translation) / (2.0 * h);
    const Matrix3 w = (pp.rotation - pm.rotation) / (2.0 * h) * r0.transpose();
    j.block<3, 1>(3, i) = 0.5 * Vector3(w(2, 1) - w(1, 2), w(0, 2) - w(2, 0), w(1, 0) - w(0, 1));
  }
  return j;
}

namespace check_detail {

template <typename F>
OracleResult timed(const std::string& name, double tolerance, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  OracleResult r;
  r.name = name;
  r.tolerance = tolerance;
  try {
    r.error = body(r.detail);
    r.passed = std::isfinite(r.error) && r.error < tolerance;
  } catch (const std::exception& e) {
    r.error = std::numeric_limits<double>::infinity();
    r.detail = e.what();
    r.passed = false;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace check_detail

/// Analytic vs finite-difference Jacobians for both ports: relative error on
/// the linear rows, absolute on the angular rows, worst over all samples.
inline OracleResult check_jacobian(const DHChain& chain, const CheckOptions& opt = {}) {
  return check_detail::timed("jacobian_fd", 1e-6, [&](std::string& detail) {
    std::mt19937_64 rng(opt.seed);
    double worst = 0.0;
    for (int s = 0; s < opt.samples; ++s) {
      const Vector8 q = random_configuration(chain.limits, rng);
      for (Port p : kPorts) {
        Matrix68 ja = jacobian(chain, q, p);
        if (opt.perturb_jacobian_column && p == Port::Handle)
          ja.col(*opt.perturb_jacobian_column).head<3>().array() += opt.perturbation;
        const Matrix68 jf = fd_jacobian(chain, q, p);
        const double lin_scale = std::max(jf.topRows<3>().cwiseAbs().maxCoeff(), 1e-12);
        const double lin = (ja.topRows<3>() - jf.topRows<3>()).cwiseAbs().maxCoeff() / lin_scale;
        const double ang = (ja.bottomRows<3>() - jf.bottomRows<3>()).cwiseAbs().maxCoeff();
        worst = std::max({worst, lin, ang});
      }
    }
    detail = std::to_string(opt.samples) + " states, both ports";
    return worst;
  });
}

/// g(q) vs central differences of the potential energy.
inline OracleResult check_gravity(const PlantModel& model, const CheckOptions& opt = {}) {
  return check_detail::timed("gravity_fd", 1e-6, [&](std::string& detail) {
    std::mt19937_64 rng(opt.seed + 1);
    double worst = 0.0;
    const double h = 1e-6;
    for (int s = 0; s < opt.samples; ++s) {
      const Vector8 q = random_configuration(model.chain.limits, rng);
      const Vector8 g = gravity_vector(model.chain, model.inertia, q, model.gravity);
      Vector8 fd;
      for (int i = 0; i < kNumJoints; ++i) {
        Vector8 qp = q, qm = q;
        qp[i] += h;
        qm[i] -= h;
        fd[i] = (potential_energy(model.chain, model.inertia, qp, model.gravity) -
                 potential_energy(model.chain, model.inertia, qm, model.gravity)) /
                (2.0 * h);
      }
      worst = std::max(worst, (g - fd).cwiseAbs().maxCoeff() / std::max(fd.cwiseAbs().maxCoeff(), 1e-12));
    }
    detail = std::to_string(opt.samples) + " states";
    return worst;
  });
}

/// Frictionless free motion for 1 s from an off-equilibrium posture, once
/// with the full chain (the girdle swings and the carriage slides out) and
/// once with the girdle locked. Worst relative drift of the two.
inline OracleResult check_energy(const PlantModel& model, const CheckOptions& opt = {}) {
  return check_detail::timed("energy_audit", 1e-5, [&](std::string& detail) {
    PlantModel free = model;
    free.viscous_friction.setZero();
    Vector8 q0;
    q0 << 0.0, 0.05, -0.6, 0.9, 0.3, 1.0, 0.4, 0.2;
    JointLock girdle = kNoLock;
    girdle[0] = girdle[1] = true;
    const EnergyAudit full = energy_audit(free, q0, 1.0, opt.energy_dt);
    const EnergyAudit arm = energy_audit(free, q0, 1.0, opt.energy_dt, Vector8::Zero(), girdle);
    detail = "dt " + format_double(opt.energy_dt) + " s; full chain " + format_double(full.relative) +
             ", girdle locked " + format_double(arm.relative);
    return std::max(full.relative, arm.relative);
  });
}

/// damped_pinv_solve vs (JᵀWJ + λ²I) x = JᵀW v on random square systems.
inline OracleResult check_normal_equations(const CheckOptions& opt = {}) {
  return check_detail::timed("normal_equation", 1e-9, [&](std::string& detail) {
    std::mt19937_64 rng(opt.seed + 2);
    std::uniform_real_distribution<double> u(-1.0, 1.0), wu(0.1, 2.0);
    double worst = 0.0;
    for (int s = 0; s < opt.samples; ++s) {
      Eigen::MatrixXd j(6, kNumJoints);
      Eigen::VectorXd v(6), w(6);
      for (Eigen::Index r = 0; r < 6; ++r) {
        for (Eigen::Index c = 0; c < kNumJoints; ++c) j(r, c) = u(rng);
        v[r] = u(rng);
        w[r] = wu(rng);
      }
      const double lambda = 1e-2;
      const Vector8 x = damped_pinv_solve(j, v, lambda, w);
      const Eigen::MatrixXd ja = j.leftCols(kNumActive);
      const Eigen::MatrixXd n = ja.transpose() * w.asDiagonal() * ja +
                                lambda * lambda * Eigen::MatrixXd::Identity(kNumActive, kNumActive);
      const Eigen::VectorXd ref = n.partialPivLu().solve(ja.transpose() * w.asDiagonal() * v);
      worst = std::max(worst, (x.head<kNumActive>() - ref).norm() / std::max(ref.norm(), 1e-12));
    }
    detail = std::to_string(opt.samples) + " random 6x6 systems";
    return worst;
  });
}

/// 1-DoF admittance (M 1 kg, B 10 N·s/m, F 1 N) vs v(t) = (F/B)(1 − e^{−Bt/M}).
inline OracleResult check_admittance(const CheckOptions& = {}) {
  return check_detail::timed("admittance_1dof", 1e-4, [&](std::string& detail) {
    ImpedanceParams imp;
    for (Port p : kPorts) imp[p] = PortImpedance::diagonal(1.0, 10.0, 0.0, 1.0, 10.0, 0.0);
    AdmittanceState st;
    PortWrenches f;
    f.handle[0] = 1.0;
    const double dt = 1e-4;
    double worst = 0.0;
    for (int k = 1; k <= 10000; ++k) {
      const double v = admittance_step(st, f, imp, dt)[Port::Handle][0];
      const double exact = 0.1 * (1.0 - std::exp(-10.0 * k * dt));
      worst = std::max(worst, std::abs(v - exact));
    }
    detail = "1 s at dt 1e-4";
    return worst;
  });
}

/// Skew symmetry of Ṁ − 2C with Ṁ from finite differences along qd.
inline OracleResult check_coriolis(const PlantModel& model, const CheckOptions& opt = {}) {
  return check_detail::timed("coriolis_skew", 1e-4, [&](std::string& detail) {
    std::mt19937_64 rng(opt.seed + 3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    const double h = 1e-6;
    for (int s = 0; s < opt.samples; ++s) {
      JointState st;
      st.q = random_configuration(model.chain.limits, rng);
      for (int i = 0; i < kNumJoints; ++i) st.qd[i] = u(rng);
      const Matrix8 md = (mass_matrix(model.chain, model.inertia, Vector8(st.q + h * st.qd)) -
                          mass_matrix(model.chain, model.inertia, Vector8(st.q - h * st.qd))) /
                         (2.0 * h);
      const Matrix8 n = md - 2.0 * coriolis_matrix(model.chain, model.inertia, st);
      worst = std::max(worst, (n + n.transpose()).cwiseAbs().maxCoeff());
    }
    detail = std::to_string(opt.samples) + " states";
    return worst;
  });
}

inline std::vector<OracleResult> run_checks(const PlantModel& model, const CheckOptions& opt = {}) {
  return {check_jacobian(model.chain, opt), check_gravity(model, opt),   check_energy(model, opt),
          check_normal_equations(opt),      check_admittance(opt),       check_coriolis(model, opt)};
}

}  // namespace exosim
