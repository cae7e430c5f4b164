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

// Human-like reaching references: a minimum-jerk hand path followed by
// inverse kinematics in which the shoulder girdle is slaved to arm elevation.
//
// The girdle coupling is a linear scapulohumeral rhythm,
//   q1 = r1 · θ_el,  q2 = r2 · θ_el,
// a first-order stand-in with exposed coefficients.

#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "exosim/controller.hpp"

namespace exosim {

struct RhythmModel {
  double r1 = 0.15;  ///< girdle revolute per unit elevation (rad/rad)
  double r2 = 0.02;  ///< girdle prismatic per unit elevation (m/rad)

  void validate() const {
    if (!std::isfinite(r1) || !std::isfinite(r2)) throw ParameterError("rhythm coefficients must be finite");
  }
};

struct IkOptions {
  double lambda = 1e-2;
  double step = 0.5;
  double tolerance = 1e-5;  ///< handle position error (m)
  int max_iterations = 200;

  void validate() const {
    if (!(lambda > 0.0)) throw ParameterError("IK lambda must be positive");
    if (!(step > 0.0 && step <= 1.0)) throw ParameterError("IK step must lie in (0,1]");
    if (!(tolerance > 0.0)) throw ParameterError("IK tolerance must be positive");
    if (max_iterations < 1) throw ParameterError("IK needs at least one iteration");
  }
};

struct MinJerkPoint {
  Vector3 x, v, a;
};

/// x(t) = x0 + Δ(10s³ − 15s⁴ + 6s⁵), s = t/T, with exact derivatives.
inline MinJerkPoint min_jerk(const Vector3& x_start, const Vector3& x_goal, double duration, double t) {
  if (!(duration > 0.0)) throw ParameterError("min-jerk duration must be positive");
  if (t < 0.0 || t > duration) throw ParameterError("min-jerk time outside [0, T]");
  const double s = t / duration;
  const double s2 = s * s, s3 = s2 * s;
  const double p = s3 * (10.0 + s * (-15.0 + 6.0 * s));
  const double dp = s2 * (30.0 + s * (-60.0 + 30.0 * s)) / duration;
  const double ddp = s * (60.0 + s * (-180.0 + 120.0 * s)) / (duration * duration);
  const Vector3 d = x_goal - x_start;
  return {x_start + p * d, dp * d, ddp * d};
}

/// Overwrites q1, q2 with the rhythm at the configuration's own elevation.
/// Elevation depends on q1, so this iterates the (contracting) fixed point.
inline void apply_rhythm(const DHChain& chain, const RhythmModel& rhythm, Vector8& q) {
  for (int i = 0; i < 60; ++i) {
    const double el = gh_elevation(chain, q);
    const double q1 = rhythm.r1 * el, q2 = rhythm.r2 * el;
    const double change = std::max(std::abs(q1 - q[0]), std::abs(q2 - q[1]));
    q[0] = q1;
    q[1] = q2;
    if (change < 1e-14) return;
  }
}

/// Largest |q1 − r1 θ_el|, |q2 − r2 θ_el|.
inline double rhythm_residual(const DHChain& chain, const RhythmModel& rhythm, const Vector8& q) {
  const double el = gh_elevation(chain, q);
  return std::max(std::abs(q[0] - rhythm.r1 * el), std::abs(q[1] - rhythm.r2 * el));
}

/// Radius check: ‖x − GH_home‖ ≤ 0.95 (p4 + p5 + p6).
inline bool within_reach(const DHChain& chain, const Vector3& x) {
  const Vector3 gh = forward_kinematics(chain, Vector8::Zero()).gh_center();
  const BodyParams& p = chain.params;
  return (x - gh).norm() <= 0.95 * (p.p4 + p.p5 + p.p6);
}

/// Handle-position IK on joints 3–6 (wrist held at the seed) with the girdle
/// slaved to the rhythm. The step uses the Jacobian of the constrained map,
/// i.e. the arm columns plus the girdle columns times d(q1,q2)/d(arm).
inline Vector8 ik_with_rhythm(const DHChain& chain, const RhythmModel& rhythm, const Vector3& x_des,
                              const Vector8& q_seed, const IkOptions& opt = {}) {
  if (!within_reach(chain, x_des)) {
    const Vector3 gh = forward_kinematics(chain, Vector8::Zero()).gh_center();
    throw IkError((x_des - gh).norm() - 0.95 * (chain.params.p4 + chain.params.p5 + chain.params.p6));
  }
  constexpr int kFirst = 2, kCount = 4;
  constexpr double kH = 1e-7;
  Vector8 q = chain.limits.clamp(q_seed);
  apply_rhythm(chain, rhythm, q);
  const auto residual = [&](const Vector8& c) { return Vector3(x_des - forward_kinematics(chain, c).handle.translation); };
  double best = std::numeric_limits<double>::infinity();
  const Eigen::VectorXd w = Eigen::VectorXd::Ones(3);
  Vector3 err = residual(q);
  for (int it = 0; it <= opt.max_iterations; ++it) {
    best = std::min(best, err.norm());
    if (err.norm() < opt.tolerance) return q;
    if (it == opt.max_iterations) break;
    const FkResult fk = forward_kinematics(chain, q);
    const Matrix68 j = jacobian(chain, fk, Port::Handle);
    // Elevation sensitivity by central differences; the girdle follows it.
    Eigen::Matrix<double, 3, kCount> jp = j.block<3, kCount>(0, kFirst);
    for (int c = 0; c < kCount; ++c) {
      Vector8 hi = q, lo = q;
      hi[kFirst + c] += kH;
      lo[kFirst + c] -= kH;
      apply_rhythm(chain, rhythm, hi);
      apply_rhythm(chain, rhythm, lo);
      jp.col(c) += j.block<3, 2>(0, 0) * (hi.head<2>() - lo.head<2>()) / (2.0 * kH);
    }
    const Eigen::VectorXd dq = damped_least_squares(jp, err, opt.lambda, w);
    // Backtrack until the residual drops; keep the smallest trial otherwise.
    double alpha = opt.step;
    Vector8 next = q;
    Vector3 next_err = err;
    for (int halving = 0; halving < 8; ++halving, alpha *= 0.5) {
      next = q;
      next.segment<kCount>(kFirst) += alpha * dq;
      next = chain.limits.clamp(next);
      apply_rhythm(chain, rhythm, next);
      next_err = residual(next);
      if (next_err.norm() < err.norm()) break;
    }
    if (!(next_err.norm() < err.norm())) break;  // stalled, e.g. pinned on a limit
    q = next;
    err = next_err;
  }
  throw IkError(best);
}

/// Samples [0, T] at dt: min-jerk handle target, IK seeded by the previous
/// tick, central-difference rates with zero rates at both ends.
inline std::vector<ReferenceSample> generate_trajectory(const DHChain& chain, const RhythmModel& rhythm,
                                                        const Vector8& q_start, const Vector3& x_goal,
                                                        double duration, double dt, const IkOptions& opt = {},
                                                        double t0 = 0.0) {
  if (!(duration > 0.0) || !(dt > 0.0)) throw ParameterError("duration and dt must be positive");
  const double ticks = duration / dt;
  const auto n = static_cast<std::int64_t>(std::llround(ticks));
  if (n < 1 || std::abs(ticks - static_cast<double>(n)) > 1e-9 * std::max(1.0, ticks))
    throw ParameterError("dt must divide the segment duration");

  const Vector3 x_start = forward_kinematics(chain, q_start).handle.translation;
  std::vector<ReferenceSample> out(static_cast<std::size_t>(n) + 1);
  Vector8 seed = q_start;
  for (std::int64_t k = 0; k <= n; ++k) {
    auto& s = out[static_cast<std::size_t>(k)];
    const double t = std::min(duration, static_cast<double>(k) * dt);
    const Vector3 x = min_jerk(x_start, x_goal, duration, t).x;
    try {
      s.q_des = ik_with_rhythm(chain, rhythm, x, seed, opt);
    } catch (const IkError& e) {
      throw IkError(e.best_residual(), static_cast<long>(k));
    }
    seed = s.q_des;
    s.t = t0 + t;
    s.x_des = forward_kinematics(chain, s.q_des).handle;
    s.x_des.translation = x;
  }
  for (std::int64_t k = 1; k < n; ++k)
    out[static_cast<std::size_t>(k)].qd_des =
        (out[static_cast<std::size_t>(k + 1)].q_des - out[static_cast<std::size_t>(k - 1)].q_des) / (2.0 * dt);
  out.front().qd_des.setZero();
  out.back().qd_des.setZero();
  return out;
}

struct ReachSegment {
  Vector3 goal = Vector3::Zero();
  double duration = 1.0;
};

/// Chains reach segments end to end; each starts where the previous stopped.
inline std::vector<ReferenceSample> generate_segments(const DHChain& chain, const RhythmModel& rhythm,
                                                      const Vector8& q_start, const std::vector<ReachSegment>& segs,
                                                      double dt, const IkOptions& opt = {}) {
  std::vector<ReferenceSample> all;
  Vector8 q = q_start;
  double t0 = 0.0;
  for (const auto& seg : segs) {
    std::vector<ReferenceSample> part;
    try {
      part = generate_trajectory(chain, rhythm, q, seg.goal, seg.duration, dt, opt, t0);
    } catch (const IkError& e) {
      const long base = all.empty() ? 0 : static_cast<long>(all.size()) - 1;
      throw IkError(e.best_residual(), base + e.tick());
    }
    if (!all.empty()) part.erase(part.begin());
    q = part.back().q_des;
    t0 = part.back().t;
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

}  // namespace exosim
