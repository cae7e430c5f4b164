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

#include <random>

#include <gtest/gtest.h>

#include "exosim/reference.hpp"

namespace exosim {
namespace {

// Quintic with zero boundary velocity and acceleration, written out.
double quintic(double s) { return 10 * std::pow(s, 3) - 15 * std::pow(s, 4) + 6 * std::pow(s, 5); }

class ReferenceTest : public ::testing::Test {
 protected:
  DHChain chain = build_chain(BodyParams{});
  RhythmModel rhythm;
  Vector8 start = (Vector8() << 0, 0, 0, 0, 0, 1.0, 0, 0).finished();
};

TEST(MinJerk, EndpointsAndBoundaryRates) {
  const Vector3 a(0.1, 0.2, 0.3), b(0.4, -0.1, 0.0);
  const MinJerkPoint p0 = min_jerk(a, b, 2.0, 0.0);
  const MinJerkPoint p1 = min_jerk(a, b, 2.0, 2.0);
  EXPECT_EQ(p0.x, a);
  EXPECT_LT((p1.x - b).norm(), 1e-15);
  for (const auto& p : {p0, p1}) {
    EXPECT_TRUE(p.v.isZero(1e-15));
    EXPECT_TRUE(p.a.isZero(1e-12));
  }
}

TEST(MinJerk, PeakSpeedAtMidpoint) {
  const Vector3 a(0, 0, 0), b(0.3, 0.0, 0.4);
  const double t = 1.6;
  const MinJerkPoint mid = min_jerk(a, b, t, t / 2);
  EXPECT_NEAR(mid.v.norm(), 1.875 * 0.5 / t, 1e-12);
  EXPECT_LT((mid.x - 0.5 * (a + b)).norm(), 1e-15);
  EXPECT_TRUE(mid.a.isZero(1e-12));
  for (double s : {0.1, 0.3, 0.7, 0.9}) EXPECT_LE(min_jerk(a, b, t, s * t).v.norm(), mid.v.norm());
}

TEST(MinJerk, MatchesQuinticAndScalesWithDuration) {
  const Vector3 a(0.2, 0.1, -0.1), b(-0.1, 0.3, 0.2);
  for (double s : {0.0, 0.17, 0.5, 0.83, 1.0}) {
    const MinJerkPoint p = min_jerk(a, b, 1.0, s);
    const MinJerkPoint q = min_jerk(a, b, 3.0, 3.0 * s);
    EXPECT_LT((p.x - (a + quintic(s) * (b - a))).norm(), 1e-14);
    EXPECT_LT((q.x - p.x).norm(), 1e-14);
    EXPECT_LT((q.v - p.v / 3.0).norm(), 1e-14);
    EXPECT_LT((q.a - p.a / 9.0).norm(), 1e-13);
  }
  // Derivatives agree with differencing the position.
  const double h = 1e-5, t = 0.37;
  const Vector3 v = (min_jerk(a, b, 1.0, t + h).x - min_jerk(a, b, 1.0, t - h).x) / (2 * h);
  EXPECT_LT((v - min_jerk(a, b, 1.0, t).v).norm(), 1e-8);
}

TEST(MinJerk, RejectsBadArguments) {
  EXPECT_THROW(min_jerk(Vector3::Zero(), Vector3::Ones(), 0.0, 0.0), ParameterError);
  EXPECT_THROW(min_jerk(Vector3::Zero(), Vector3::Ones(), 1.0, 1.5), ParameterError);
}

TEST_F(ReferenceTest, RhythmFixedPointIsSelfConsistent) {
  std::mt19937_64 rng(50);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int s = 0; s < 10; ++s) {
    Vector8 q;
    for (int i = 0; i < kNumJoints; ++i)
      q[i] = chain.limits.lower[i] + u(rng) * (chain.limits.upper[i] - chain.limits.lower[i]);
    apply_rhythm(chain, rhythm, q);
    const double el = gh_elevation(chain, q);
    EXPECT_NEAR(q[0], rhythm.r1 * el, 1e-10);
    EXPECT_NEAR(q[1], rhythm.r2 * el, 1e-10);
    EXPECT_LT(rhythm_residual(chain, rhythm, q), 1e-10);
  }
}

TEST_F(ReferenceTest, IkReachesRandomTargetsOnTheRhythm) {
  // Targets are generated by forward kinematics of rhythm-consistent
  // postures, so each is reachable by construction.
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> el(-1.2, 0.2), ab(0.0, 1.0), rot(-0.5, 0.5), elbow(0.4, 1.8);
  int checked = 0;
  while (checked < 10) {
    Vector8 q = Vector8::Zero();
    q[2] = el(rng);
    q[3] = ab(rng);
    q[4] = rot(rng);
    q[5] = elbow(rng);
    apply_rhythm(chain, rhythm, q);
    const Vector3 target = forward_kinematics(chain, q).handle.translation;
    if (!within_reach(chain, target)) continue;
    const Vector8 sol = ik_with_rhythm(chain, rhythm, target, start);
    EXPECT_LT((forward_kinematics(chain, sol).handle.translation - target).norm(), 1e-5);
    EXPECT_LT(rhythm_residual(chain, rhythm, sol), 1e-6);
    EXPECT_EQ(chain.limits.first_violation(sol), -1);
    EXPECT_EQ(sol.tail<2>(), start.tail<2>());
    ++checked;
  }
}

TEST_F(ReferenceTest, UnreachableTargetRaisesWithResidual) {
  const Vector3 far(1.5, 0.3, 0.3);
  try {
    ik_with_rhythm(chain, rhythm, far, start);
    FAIL() << "expected IkError";
  } catch (const IkError& e) {
    EXPECT_GT(e.best_residual(), 0.5);
  }
  // Inside the reach sphere, but far from the seed for a three-step budget.
  IkOptions few;
  few.max_iterations = 3;
  EXPECT_THROW(ik_with_rhythm(chain, rhythm, Vector3(0.3, 0.3, 0.5), start, few), IkError);
}

TEST_F(ReferenceTest, ZeroLengthReachHoldsStill) {
  Vector8 q = start;
  apply_rhythm(chain, rhythm, q);
  const Vector3 x = forward_kinematics(chain, q).handle.translation;
  const auto traj = generate_trajectory(chain, rhythm, q, x, 0.5, 0.01);
  ASSERT_EQ(traj.size(), 51u);
  for (const auto& s : traj) {
    EXPECT_LT((s.q_des - q).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT(s.qd_des.cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST_F(ReferenceTest, ReachFollowsTheMinimumJerkPath) {
  Vector8 q = start;
  apply_rhythm(chain, rhythm, q);
  const Vector3 x0 = forward_kinematics(chain, q).handle.translation;
  const Vector3 goal = x0 + Vector3(0.05, 0.0, 0.15);
  ASSERT_TRUE(within_reach(chain, goal));
  const double dt = 0.005, T = 2.0;
  const auto traj = generate_trajectory(chain, rhythm, q, goal, T, dt);
  ASSERT_EQ(traj.size(), 401u);
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto& s = traj[k];
    EXPECT_NEAR(s.t, static_cast<double>(k) * dt, 1e-12);
    const Vector3 expect = x0 + quintic(s.t / T) * (goal - x0);
    worst = std::max(worst, (forward_kinematics(chain, s.q_des).handle.translation - expect).norm());
    EXPECT_LT(rhythm_residual(chain, rhythm, s.q_des), 1e-6);
    EXPECT_EQ(chain.limits.first_violation(s.q_des), -1);
  }
  EXPECT_LT(worst, 1e-4);
  EXPECT_TRUE(traj.front().qd_des.isZero(0.0));
  EXPECT_TRUE(traj.back().qd_des.isZero(0.0));
  // Interior rates are the central difference of the samples.
  const std::size_t k = 150;
  EXPECT_LT((traj[k].qd_des - (traj[k + 1].q_des - traj[k - 1].q_des) / (2 * dt)).norm(), 1e-12);
}

TEST_F(ReferenceTest, UpwardReachRaisesTheGirdle) {
  // Lifting the hand forward and up raises the arm; the girdle tracks the
  // elevation sample by sample. The path in between need not be monotone.
  Vector8 q = start;
  apply_rhythm(chain, rhythm, q);
  const Vector3 x0 = forward_kinematics(chain, q).handle.translation;
  const auto traj = generate_trajectory(chain, rhythm, q, x0 + Vector3(0.1, 0.0, 0.25), 2.0, 0.01);
  for (const auto& s : traj) {
    const double el = gh_elevation(chain, s.q_des);
    EXPECT_NEAR(s.q_des[0], rhythm.r1 * el, 1e-6);
    EXPECT_NEAR(s.q_des[1], rhythm.r2 * el, 1e-6);
  }
  EXPECT_GT(gh_elevation(chain, traj.back().q_des), gh_elevation(chain, traj.front().q_des) + 0.1);
  EXPECT_GT(traj.back().q_des[0], traj.front().q_des[0] + 0.01);
}

TEST_F(ReferenceTest, DurationMustBeAMultipleOfTheStep) {
  Vector8 q = start;
  apply_rhythm(chain, rhythm, q);
  const Vector3 x = forward_kinematics(chain, q).handle.translation;
  EXPECT_THROW(generate_trajectory(chain, rhythm, q, x, 1.0, 0.3), ParameterError);
  EXPECT_THROW(generate_trajectory(chain, rhythm, q, x, 0.0, 0.01), ParameterError);
}

TEST_F(ReferenceTest, SegmentsChainWithoutDuplicateSamples) {
  Vector8 q = start;
  apply_rhythm(chain, rhythm, q);
  const Vector3 x0 = forward_kinematics(chain, q).handle.translation;
  const std::vector<ReachSegment> segs{{x0 + Vector3(0.05, 0, 0), 0.5}, {x0 + Vector3(0.05, 0, 0.1), 0.5}};
  for (const auto& g : segs) ASSERT_TRUE(within_reach(chain, g.goal));
  const auto all = generate_segments(chain, rhythm, q, segs, 0.01);
  ASSERT_EQ(all.size(), 101u);
  for (std::size_t k = 1; k < all.size(); ++k) EXPECT_NEAR(all[k].t - all[k - 1].t, 0.01, 1e-12);
  EXPECT_LT((all[50].x_des.translation - segs[0].goal).norm(), 1e-12);
  EXPECT_LT((all.back().x_des.translation - segs[1].goal).norm(), 1e-12);

  const std::vector<ReachSegment> bad{{x0 + Vector3(0.05, 0, 0), 0.5}, {Vector3(2.0, 0, 0), 0.5}};
  try {
    generate_segments(chain, rhythm, q, bad, 0.01);
    FAIL() << "expected IkError";
  } catch (const IkError& e) {
    EXPECT_GE(e.tick(), 50);
  }
}

}  // namespace
}  // namespace exosim
