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

// Rigid-body model of the arm: joint-space inertia, Coriolis terms, gravity
// load and forward dynamics.
//
// Sign convention: gravity_vector() returns the holding load, i.e. the
// actuator torque that keeps the arm still. Feedforward is +g.

#pragma once

#include <array>
#include <optional>
#include <string>

#include "exosim/kinematics.hpp"

namespace exosim {

inline const Vector3 kStandardGravity{0.0, 0.0, -9.81};
inline constexpr double kDefaultBodyMass = 6.35;  // 14 lb
inline constexpr double kDefaultLinkRadius = 0.03;

/// Inertial properties of one link, expressed in that link's DH frame.
struct LinkInertia {
  double mass = 0.0;
  Vector3 com = Vector3::Zero();
  Matrix3 inertia = Matrix3::Zero();  ///< about the COM

  bool operator==(const LinkInertia&) const = default;
};

struct InertiaTable {
  std::array<LinkInertia, kNumJoints> links;

  double total_mass() const {
    double m = 0.0;
    for (const auto& l : links) m += l.mass;
    return m;
  }

  /// Throws ParameterError naming the link on the first violated invariant.
  void validate() const {
    for (std::size_t i = 0; i < links.size(); ++i) {
      const auto& l = links[i];
      const std::string who = "link " + std::to_string(i + 1);
      if (!(l.mass >= 0.0)) throw ParameterError(who + ": mass must be non-negative");
      if ((l.inertia - l.inertia.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + l.inertia.norm()))
        throw ParameterError(who + ": inertia must be symmetric");
      Eigen::SelfAdjointEigenSolver<Matrix3> es(l.inertia);
      const Vector3 p = es.eigenvalues();
      const double tol = 1e-12 * (1.0 + p.cwiseAbs().maxCoeff());
      if (p.minCoeff() < -tol) throw ParameterError(who + ": inertia must be positive semidefinite");
      if (p[0] + p[1] < p[2] - tol || p[0] + p[2] < p[1] - tol || p[1] + p[2] < p[0] - tol)
        throw ParameterError(who + ": principal moments violate the triangle inequality");
    }
  }

  bool operator==(const InertiaTable&) const = default;
};

namespace detail {

inline Matrix3 cylinder_inertia(double mass, double length, double radius, const Vector3& axis) {
  const double axial = 0.5 * mass * radius * radius;
  const double perp = mass * (3.0 * radius * radius + length * length) / 12.0;
  const Matrix3 uu = axis * axis.transpose();
  return perp * (Matrix3::Identity() - uu) + axial * uu;
}

/// Position of frame (i-1)'s origin in frame i. Constant for revolute rows.
inline Vector3 previous_origin_in_frame(const DHRow& row) {
  return row.transform(row.theta_offset, row.d).inverse().translation;
}

}  // namespace detail

/// Default link table: mass spread over the links in proportion to length,
/// each link a solid cylinder of `radius` with its COM at mid-link.
///
/// Link lengths: girdle arm p2; carriage, GH mount and linkage ring p3 each;
/// upper arm p4; forearm p5; wrist block and handle p6 each. The carriage,
/// ring and wrist block are centered on their frame origins.
inline InertiaTable default_inertias(const DHChain& chain, double body_mass = kDefaultBodyMass,
                                     double radius = kDefaultLinkRadius) {
  const BodyParams& p = chain.params;
  if (!(body_mass > 0.0)) throw ParameterError("body mass must be positive");
  if (!(radius > 0.0)) throw ParameterError("link radius must be positive");

  struct Segment {
    Vector3 start, end;
  };
  const Vector3 z = Vector3::UnitZ();
  const std::array<Segment, kNumJoints> seg{{
      {Vector3::Zero(), p.p2 * z},
      {-0.5 * p.p3 * z, 0.5 * p.p3 * z},
      {detail::previous_origin_in_frame(chain.rows[2]), Vector3::Zero()},
      {-0.5 * p.p3 * z, 0.5 * p.p3 * z},
      {detail::previous_origin_in_frame(chain.rows[4]), Vector3::Zero()},
      {detail::previous_origin_in_frame(chain.rows[5]), Vector3::Zero()},
      {-0.5 * p.p6 * z, 0.5 * p.p6 * z},
      {detail::previous_origin_in_frame(chain.rows[7]), Vector3::Zero()},
  }};
  double total_length = 0.0;
  for (const auto& s : seg) total_length += (s.end - s.start).norm();

  InertiaTable t;
  for (std::size_t i = 0; i < seg.size(); ++i) {
    const Vector3 d = seg[i].end - seg[i].start;
    const double len = d.norm();
    LinkInertia& l = t.links[i];
    l.mass = body_mass * len / total_length;
    l.com = 0.5 * (seg[i].start + seg[i].end);
    l.inertia = detail::cylinder_inertia(l.mass, len, radius, d / len);
  }
  return t;
}

/// World-frame quantities of one link at a configuration.
struct LinkFrame {
  Vector3 com;         ///< COM position
  Matrix3 inertia;     ///< rotational inertia about the COM, world axes
  Matrix68 jacobian;   ///< COM Jacobian [linear; angular]
};

inline std::array<LinkFrame, kNumJoints> link_frames(const DHChain& chain, const InertiaTable& inertia,
                                                     const FkResult& fk) {
  std::array<LinkFrame, kNumJoints> out;
  for (int i = 0; i < kNumJoints; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const Pose& f = fk.frames[ui + 1];
    const LinkInertia& li = inertia.links[ui];
    out[ui].com = f.apply(li.com);
    out[ui].inertia = f.rotation * li.inertia * f.rotation.transpose();
    out[ui].jacobian = point_jacobian(chain, fk, i, out[ui].com);
  }
  return out;
}

inline Matrix8 mass_matrix(const DHChain& chain, const InertiaTable& inertia, const FkResult& fk) {
  Matrix8 m = Matrix8::Zero();
  const auto links = link_frames(chain, inertia, fk);
  for (std::size_t i = 0; i < links.size(); ++i) {
    const auto& l = links[i];
    const auto jv = l.jacobian.topRows<3>();
    const auto jw = l.jacobian.bottomRows<3>();
    m.noalias() += inertia.links[i].mass * jv.transpose() * jv;
    m.noalias() += jw.transpose() * l.inertia * jw;
  }
  return 0.5 * (m + m.transpose());
}

inline Matrix8 mass_matrix(const DHChain& chain, const InertiaTable& inertia, const Vector8& q) {
  return mass_matrix(chain, inertia, forward_kinematics(chain, q));
}

inline Vector8 gravity_vector(const DHChain& chain, const InertiaTable& inertia, const FkResult& fk,
                              const Vector3& gravity = kStandardGravity) {
  Vector8 g = Vector8::Zero();
  for (int i = 0; i < kNumJoints; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const double m = inertia.links[ui].mass;
    if (m == 0.0) continue;
    const Vector3 com = fk.frames[ui + 1].apply(inertia.links[ui].com);
    const Matrix68 j = point_jacobian(chain, fk, i, com);
    g.noalias() -= m * j.topRows<3>().transpose() * gravity;
  }
  return g;
}

inline Vector8 gravity_vector(const DHChain& chain, const InertiaTable& inertia, const Vector8& q,
                              const Vector3& gravity = kStandardGravity) {
  return gravity_vector(chain, inertia, forward_kinematics(chain, q), gravity);
}

/// U(q) = −Σ m_i gravityᵀ c_i(q), zero at the world origin.
inline double potential_energy(const DHChain&, const InertiaTable& inertia, const FkResult& fk,
                               const Vector3& gravity = kStandardGravity) {
  double u = 0.0;
  for (std::size_t i = 0; i < inertia.links.size(); ++i)
    u -= inertia.links[i].mass * gravity.dot(fk.frames[i + 1].apply(inertia.links[i].com));
  return u;
}

inline double potential_energy(const DHChain& chain, const InertiaTable& inertia, const Vector8& q,
                               const Vector3& gravity = kStandardGravity) {
  return potential_energy(chain, inertia, forward_kinematics(chain, q), gravity);
}

inline double kinetic_energy(const Matrix8& m, const Vector8& qd) { return 0.5 * qd.dot(m * qd); }

/// Coriolis matrix from Christoffel symbols of central differences of M.
inline Matrix8 coriolis_matrix(const DHChain& chain, const InertiaTable& inertia, const JointState& s,
                               double step = 1e-6) {
  std::array<Matrix8, kNumJoints> dm;
  for (int k = 0; k < kNumJoints; ++k) {
    Vector8 qp = s.q, qm = s.q;
    qp[k] += step;
    qm[k] -= step;
    dm[static_cast<std::size_t>(k)] =
        (mass_matrix(chain, inertia, qp) - mass_matrix(chain, inertia, qm)) / (2.0 * step);
  }
  Matrix8 c = Matrix8::Zero();
  for (int k = 0; k < kNumJoints; ++k)
    for (int j = 0; j < kNumJoints; ++j)
      for (int i = 0; i < kNumJoints; ++i) {
        const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j),
                   uk = static_cast<std::size_t>(k);
        c(k, j) += 0.5 * (dm[ui](k, j) + dm[uj](k, i) - dm[uk](i, j)) * s.qd[i];
      }
  return c;
}

/// C(q, qd)·qd by forward recursion of link velocities and velocity-product
/// accelerations (qdd = 0), projected through the COM Jacobians. Exact, and
/// far cheaper than coriolis_matrix() for the plant inner loop.
inline Vector8 coriolis_bias(const DHChain& chain, const InertiaTable& inertia, const FkResult& fk,
                             const Vector8& qd) {
  Vector3 omega = Vector3::Zero(), alpha = Vector3::Zero();
  Vector3 vel_o = Vector3::Zero(), acc_o = Vector3::Zero();  // frame origin of the previous body
  Vector8 bias = Vector8::Zero();
  for (int i = 0; i < kNumJoints; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const Vector3 z = fk.joint_axis(i);
    const Vector3 r = fk.frames[ui + 1].translation - fk.frames[ui].translation;
    if (chain.kind(i) == JointKind::Revolute) {
      const Vector3 w_rel = z * qd[i];
      alpha += omega.cross(w_rel);
      omega += w_rel;
      acc_o += alpha.cross(r) + omega.cross(omega.cross(r));
      vel_o += omega.cross(r);
    } else {
      const Vector3 v_rel = z * qd[i];
      acc_o += alpha.cross(r) + omega.cross(omega.cross(r)) + 2.0 * omega.cross(v_rel);
      vel_o += omega.cross(r) + v_rel;
    }
    const LinkInertia& li = inertia.links[ui];
    const Vector3 rho = fk.frames[ui + 1].rotation * li.com;
    const Vector3 acc_c = acc_o + alpha.cross(rho) + omega.cross(omega.cross(rho));
    const Matrix3 iw = fk.frames[ui + 1].rotation * li.inertia * fk.frames[ui + 1].rotation.transpose();
    const Matrix68 j = point_jacobian(chain, fk, i, fk.frames[ui + 1].translation + rho);
    bias.noalias() += j.topRows<3>().transpose() * (li.mass * acc_c);
    bias.noalias() += j.bottomRows<3>().transpose() * (iw * alpha + omega.cross(iw * omega));
  }
  return bias;
}

/// Everything the plant integrator needs beyond the chain itself.
struct PlantModel {
  DHChain chain;
  InertiaTable inertia;
  Vector8 viscous_friction;  ///< diagonal D (N·m·s/rad or N·s/m)
  Vector3 gravity = kStandardGravity;

  static Vector8 default_friction() {
    Vector8 d;
    d << 0.05, 0.5, 0.05, 0.05, 0.05, 0.05, 0.01, 0.01;
    return d;
  }

  static PlantModel with_defaults(const DHChain& chain) {
    return {chain, default_inertias(chain), default_friction(), kStandardGravity};
  }
};

struct PortWrenches {
  Wrench cuff = Wrench::Zero();
  Wrench handle = Wrench::Zero();

  const Wrench& operator[](Port p) const { return p == Port::Cuff ? cuff : handle; }
  Wrench& operator[](Port p) { return p == Port::Cuff ? cuff : handle; }
};

/// Joints held fixed (qdd = 0) during forward dynamics, e.g. for reduced tests.
using JointLock = std::array<bool, kNumJoints>;
inline constexpr JointLock kNoLock{};

/// Solves M qdd = tau + J_cuffᵀ F_cuff + J_handleᵀ F_handle − C qd − g − D qd.
inline Vector8 forward_dynamics(const PlantModel& model, const JointState& s, const Vector8& tau,
                                const PortWrenches& wrenches, const JointLock& lock = kNoLock) {
  for (int i = kNumActive; i < kNumJoints; ++i)
    if (tau[i] != 0.0)
      throw ParameterError("passive joint " + std::to_string(i + 1) + " cannot carry actuator torque");
  const FkResult fk = forward_kinematics(model.chain, s.q);
  const Matrix8 m = mass_matrix(model.chain, model.inertia, fk);
  Vector8 rhs = tau - coriolis_bias(model.chain, model.inertia, fk, s.qd) -
                gravity_vector(model.chain, model.inertia, fk, model.gravity) -
                model.viscous_friction.cwiseProduct(s.qd);
  for (Port p : kPorts)
    if (!wrenches[p].isZero(0.0)) rhs.noalias() += jacobian(model.chain, fk, p).transpose() * wrenches[p];

  int free_count = 0;
  std::array<int, kNumJoints> free_idx{};
  for (int i = 0; i < kNumJoints; ++i)
    if (!lock[static_cast<std::size_t>(i)]) free_idx[static_cast<std::size_t>(free_count++)] = i;

  Vector8 qdd = Vector8::Zero();
  if (free_count == kNumJoints) {
    Eigen::LLT<Matrix8> llt(m);
    if (llt.info() != Eigen::Success) throw std::logic_error("mass matrix is not positive definite");
    qdd = llt.solve(rhs);
    return qdd;
  }
  Eigen::MatrixXd mf(free_count, free_count);
  Eigen::VectorXd bf(free_count);
  for (int a = 0; a < free_count; ++a) {
    bf[a] = rhs[free_idx[static_cast<std::size_t>(a)]];
    for (int b = 0; b < free_count; ++b)
      mf(a, b) = m(free_idx[static_cast<std::size_t>(a)], free_idx[static_cast<std::size_t>(b)]);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(mf);
  if (llt.info() != Eigen::Success) throw std::logic_error("mass matrix is not positive definite");
  const Eigen::VectorXd x = llt.solve(bf);
  for (int a = 0; a < free_count; ++a) qdd[free_idx[static_cast<std::size_t>(a)]] = x[a];
  return qdd;
}

/// Total mechanical energy ½qdᵀMqd + U.
inline double total_energy(const PlantModel& model, const JointState& s) {
  const FkResult fk = forward_kinematics(model.chain, s.q);
  return kinetic_energy(mass_matrix(model.chain, model.inertia, fk), s.qd) +
         potential_energy(model.chain, model.inertia, fk, model.gravity);
}

}  // namespace exosim
