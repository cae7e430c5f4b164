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

// 8-DoF arm chain: Denavit-Hartenberg model, forward kinematics, port
// Jacobians and damped least-squares rate resolution.
//
// World frame: x anterior, y lateral toward the instrumented arm, z up.
//
//   joint 1  R  about world x, rotates the girdle radial arm in the frontal plane
//   joint 2  P  along the radial arm; GH center sits p2 + q2 + p3 from the joint-1 axis
//   joint 3  R  spherical linkage: axes of joints 3-5 are concurrent
//   joint 4  R  at the GH center
//   joint 5  R  humeral axis
//   joint 6  R  elbow flexion, upper arm p4, forearm p5
//   joint 7  R  wrist flexion (passive)
//   joint 8  R  wrist deviation (passive), handle p6 beyond the wrist
//
// At q = 0 the upper arm hangs vertically and the elbow is extended.

#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "exosim/types.hpp"

namespace exosim {

enum class JointKind { Revolute, Prismatic };

enum class Side { Left, Right };

struct JointLimits {
  Vector8 lower;
  Vector8 upper;

  static JointLimits defaults() {
    JointLimits l;
    l.lower << -0.5, 0.0, -2.8, -0.6, -1.5, 0.0, -1.5, -0.7;
    l.upper << 0.7, 0.1, 0.9, 2.6, 1.5, 2.5, 1.5, 0.7;
    return l;
  }

  bool contains(const Vector8& q) const {
    return ((q - lower).array() >= 0.0).all() && ((upper - q).array() >= 0.0).all();
  }

  /// Index of the first joint outside the limits, or -1.
  int first_violation(const Vector8& q) const {
    for (int i = 0; i < kNumJoints; ++i)
      if (!(q[i] >= lower[i] && q[i] <= upper[i])) return i;
    return -1;
  }

  Vector8 clamp(const Vector8& q) const { return q.cwiseMax(lower).cwiseMin(upper); }

  void validate() const {
    for (int i = 0; i < kNumJoints; ++i)
      if (!(lower[i] < upper[i]))
        throw ParameterError("joint " + std::to_string(i + 1) + ": lower limit must be below upper");
  }
};

/// Device geometry. p1, p2 are fixed per device; p3..p6 fit the patient.
struct BodyParams {
  double p1 = 0.30;  ///< base vertical offset (m)
  double p2 = 0.20;  ///< girdle linkage base radius (m)
  double p3 = 0.10;  ///< girdle carriage to GH center (m)
  double p4 = 0.28;  ///< upper arm (m)
  double p5 = 0.25;  ///< forearm (m)
  double p6 = 0.08;  ///< wrist to handle (m)
  Side side = Side::Right;
  double beta = 0.5;  ///< cuff position along the upper arm, fraction in (0,1)

  void validate() const {
    const std::array<std::pair<const char*, double>, 6> lengths{
        {{"p1", p1}, {"p2", p2}, {"p3", p3}, {"p4", p4}, {"p5", p5}, {"p6", p6}}};
    for (const auto& [name, v] : lengths)
      if (!(v > 0.0) || !std::isfinite(v))
        throw ParameterError(std::string(name) + " must be a positive length");
    if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("beta must lie in (0,1)");
  }

  bool operator==(const BodyParams&) const = default;
};

struct JointState {
  Vector8 q = Vector8::Zero();
  Vector8 qd = Vector8::Zero();

  static constexpr std::array<bool, kNumJoints> active_mask{true, true, true, true,
                                                            true, true, false, false};
};

/// Standard DH row: Rot_z(theta) · Trans_z(d) · Trans_x(a) · Rot_x(alpha).
/// Revolute: theta = theta_offset + q. Prismatic: d = d_offset + q.
struct DHRow {
  JointKind kind = JointKind::Revolute;
  double theta_offset = 0.0;
  double d = 0.0;
  double a = 0.0;
  double alpha = 0.0;

  Pose transform(double q) const {
    const double theta = kind == JointKind::Revolute ? theta_offset + q : theta_offset;
    const double dd = kind == JointKind::Prismatic ? d + q : d;
    return transform(theta, dd);
  }

  Pose transform(double theta, double dd) const {
    const double ct = std::cos(theta), st = std::sin(theta);
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    Pose t;
    t.rotation << ct, -st * ca, st * sa,
                  st, ct * ca, -ct * sa,
                  0, sa, ca;
    t.translation << a * ct, a * st, dd;
    return t;
  }
};

struct DHChain {
  BodyParams params;
  JointLimits limits = JointLimits::defaults();
  Pose base;
  std::array<DHRow, kNumJoints> rows;

  JointKind kind(int joint) const { return rows[static_cast<std::size_t>(joint)].kind; }
};

inline DHChain build_chain(const BodyParams& params,
                           const JointLimits& limits = JointLimits::defaults()) {
  params.validate();
  limits.validate();
  DHChain c;
  c.params = params;
  c.limits = limits;
  // Base frame: z0 along world x, x0 pointing down so that joint 1 at zero
  // aligns the radial arm with world +y.
  c.base.rotation << 0, 0, 1,
                     0, 1, 0,
                     -1, 0, 0;
  c.base.translation = Vector3(0, 0, params.p1);
  const double h = kPi / 2;
  using K = JointKind;
  c.rows = {{
      {K::Revolute, 0.0, 0.0, 0.0, -h},
      {K::Prismatic, 0.0, params.p2, 0.0, 0.0},
      {K::Revolute, 0.0, params.p3, 0.0, h},
      {K::Revolute, h, 0.0, 0.0, h},
      {K::Revolute, h, params.p4, 0.0, -h},
      {K::Revolute, -h, 0.0, params.p5, 0.0},
      {K::Revolute, 0.0, 0.0, 0.0, -h},
      {K::Revolute, 0.0, 0.0, params.p6, 0.0},
  }};
  return c;
}

struct FkResult {
  Pose cuff;
  Pose handle;
  /// frames[0] is the base frame, frames[i] the frame after joint i.
  std::array<Pose, kNumJoints + 1> frames;

  const Pose& port(Port p) const { return p == Port::Cuff ? cuff : handle; }
  Vector3 joint_axis(int joint) const { return frames[static_cast<std::size_t>(joint)].rotation.col(2); }
  Vector3 joint_origin(int joint) const { return frames[static_cast<std::size_t>(joint)].translation; }
  Vector3 gh_center() const { return frames[3].translation; }
  Vector3 elbow_center() const { return frames[5].translation; }
  Vector3 wrist_center() const { return frames[6].translation; }
};

/// Index of the last joint that moves the port's frame (0-based).
inline constexpr int port_last_joint(Port p) { return p == Port::Cuff ? 4 : 7; }

inline FkResult forward_kinematics(const DHChain& chain, const Vector8& q) {
  FkResult r;
  r.frames[0] = chain.base;
  for (int i = 0; i < kNumJoints; ++i)
    r.frames[static_cast<std::size_t>(i) + 1] =
        r.frames[static_cast<std::size_t>(i)] * chain.rows[static_cast<std::size_t>(i)].transform(q[i]);
  r.handle = r.frames[kNumJoints];
  // The cuff rides on the upper-arm link, a fraction beta of the way to the elbow.
  const DHRow& upper = chain.rows[4];
  r.cuff = r.frames[4] * upper.transform(upper.theta_offset + q[4], chain.params.beta * upper.d);
  return r;
}

inline FkResult forward_kinematics(const DHChain& chain, const JointState& s) {
  return forward_kinematics(chain, s.q);
}

/// Geometric Jacobian of a point rigidly attached to the body moved by `last_joint`.
/// Rows are [linear; angular] in the world frame.
inline Matrix68 point_jacobian(const DHChain& chain, const FkResult& fk, int last_joint,
                               const Vector3& point) {
  Matrix68 j = Matrix68::Zero();
  for (int i = 0; i <= last_joint; ++i) {
    const Vector3 z = fk.joint_axis(i);
    if (chain.kind(i) == JointKind::Revolute) {
      j.block<3, 1>(0, i) = z.cross(point - fk.joint_origin(i));
      j.block<3, 1>(3, i) = z;
    } else {
      j.block<3, 1>(0, i) = z;
    }
  }
  return j;
}

inline Matrix68 jacobian(const DHChain& chain, const FkResult& fk, Port port) {
  return point_jacobian(chain, fk, port_last_joint(port), fk.port(port).translation);
}

inline Matrix68 jacobian(const DHChain& chain, const Vector8& q, Port port) {
  return jacobian(chain, forward_kinematics(chain, q), port);
}

/// Angle between the upper arm (GH center to elbow) and straight down, in [0, π].
inline double gh_elevation(const FkResult& fk) {
  const Vector3 arm = (fk.elbow_center() - fk.gh_center()).normalized();
  const double c = std::clamp(arm.dot(Vector3(0, 0, -1)), -1.0, 1.0);
  return std::acos(c);
}

inline double gh_elevation(const DHChain& chain, const Vector8& q) {
  return gh_elevation(forward_kinematics(chain, q));
}

// Rate resolution ----------------------------------------------------------

/// Minimizes Σ w_k (J x − v)_k² + λ²‖x‖² by QR on the stacked system
/// [√W J; λ I] x = [√W v; 0]. J is m×n with n ≤ m + n always solvable for λ > 0.
inline Eigen::VectorXd damped_least_squares(const Eigen::MatrixXd& j, const Eigen::VectorXd& v,
                                            double lambda, const Eigen::VectorXd& weights) {
  if (!(lambda > 0.0)) throw ParameterError("damping lambda must be positive");
  if (j.rows() != v.size() || j.rows() != weights.size())
    throw ParameterError("damped_least_squares: row count mismatch");
  if ((weights.array() < 0.0).any()) throw ParameterError("row weights must be non-negative");
  const Eigen::Index m = j.rows(), n = j.cols();
  const Eigen::VectorXd sw = weights.cwiseSqrt();
  Eigen::MatrixXd a(m + n, n);
  a.topRows(m) = sw.asDiagonal() * j;
  a.bottomRows(n) = lambda * Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m + n);
  b.head(m) = sw.cwiseProduct(v);
  Eigen::VectorXd x = a.householderQr().solve(b);

  // Normal-equation residual self-check.
  const Eigen::MatrixXd jtw = j.transpose() * weights.asDiagonal();
  const Eigen::VectorXd rhs = jtw * v;
  const Eigen::VectorXd res =
      (jtw * j + lambda * lambda * Eigen::MatrixXd::Identity(n, n)) * x - rhs;
  const double scale = std::max(1.0, rhs.norm() + (jtw * j).norm() * x.norm());
  if (!(res.norm() <= 1e-9 * scale))
    throw std::logic_error("damped least squares failed its normal-equation self-check");
  return x;
}

/// Resolves stacked port velocities into joint rates over the active joints.
/// Passive columns are removed from the solve: their contribution at the
/// supplied passive rates is subtracted from v_des, and the returned vector
/// carries those passive rates unchanged.
inline Vector8 damped_pinv_solve(const Eigen::MatrixXd& j_stack, const Eigen::VectorXd& v_des,
                                 double lambda, const Eigen::VectorXd& weights,
                                 const Eigen::Matrix<double, kNumPassive, 1>& passive_rates =
                                     Eigen::Matrix<double, kNumPassive, 1>::Zero()) {
  if (j_stack.cols() != kNumJoints) throw ParameterError("stacked Jacobian must have 8 columns");
  const Eigen::VectorXd target = v_des - j_stack.rightCols(kNumPassive) * passive_rates;
  const Eigen::VectorXd active =
      damped_least_squares(j_stack.leftCols(kNumActive), target, lambda, weights);
  Vector8 out;
  out.head<kNumActive>() = active;
  out.tail<kNumPassive>() = passive_rates;
  return out;
}

}  // namespace exosim
