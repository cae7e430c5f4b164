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

// Shared value types, Eigen aliases and the error hierarchy.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace exosim {

inline constexpr int kNumJoints = 8;
inline constexpr int kNumActive = 6;
inline constexpr int kNumPassive = kNumJoints - kNumActive;
inline constexpr double kPi = 3.14159265358979323846;

using Vector3 = Eigen::Vector3d;
using Vector6 = Eigen::Matrix<double, 6, 1>;
using Vector8 = Eigen::Matrix<double, kNumJoints, 1>;
using Matrix3 = Eigen::Matrix3d;
using Matrix6 = Eigen::Matrix<double, 6, 6>;
using Matrix8 = Eigen::Matrix<double, kNumJoints, kNumJoints>;
using Matrix38 = Eigen::Matrix<double, 3, kNumJoints>;
using Matrix68 = Eigen::Matrix<double, 6, kNumJoints>;

/// Spatial force at an interaction port: [force (N); torque (N·m)], world frame.
using Wrench = Vector6;
/// Spatial velocity at a port: [linear (m/s); angular (rad/s)], world frame.
using Twist = Vector6;

/// The two instrumented human-robot interfaces.
enum class Port { Cuff = 0, Handle = 1 };
inline constexpr std::array<Port, 2> kPorts{Port::Cuff, Port::Handle};

inline constexpr std::size_t port_index(Port p) { return static_cast<std::size_t>(p); }

inline const char* port_name(Port p) { return p == Port::Cuff ? "cuff" : "handle"; }

/// One value per port, indexed by Port.
template <typename T>
struct PerPort {
  std::array<T, 2> values{};

  T& operator[](Port p) { return values[port_index(p)]; }
  const T& operator[](Port p) const { return values[port_index(p)]; }
  bool operator==(const PerPort&) const = default;
};

inline constexpr bool is_active_joint(int i) { return i < kNumActive; }

// Errors -------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model or algorithm parameter is outside its domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A scenario configuration failed validation. `path` names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class SimulationDiverged : public Error {
 public:
  SimulationDiverged(long tick, const std::string& what)
      : Error("simulation diverged at sensor tick " + std::to_string(tick) + ": " + what),
        tick_(tick) {}
  long tick() const { return tick_; }

 private:
  long tick_;
};

/// Inverse kinematics did not reach the target; carries the best residual (m).
class IkError : public Error {
 public:
  IkError(double best_residual, long tick = -1)
      : Error(message(best_residual, tick)), best_residual_(best_residual), tick_(tick) {}
  double best_residual() const { return best_residual_; }
  long tick() const { return tick_; }

 private:
  static std::string message(double r, long tick) {
    std::string m = "unreachable-or-degenerate target (best residual " + std::to_string(r) + " m)";
    if (tick >= 0) m += " at tick " + std::to_string(tick);
    return m;
  }
  double best_residual_;
  long tick_;
};

/// The measured response is too small to estimate an impedance from.
class ImmeasurableError : public Error {
 public:
  using Error::Error;
};

class TimestampError : public Error {
 public:
  using Error::Error;
};

// Rigid transforms ---------------------------------------------------------

struct Pose {
  Matrix3 rotation = Matrix3::Identity();
  Vector3 translation = Vector3::Zero();

  static Pose identity() { return {}; }

  Pose operator*(const Pose& rhs) const {
    return {rotation * rhs.rotation, rotation * rhs.translation + translation};
  }
  Vector3 apply(const Vector3& p) const { return rotation * p + translation; }
  Pose inverse() const {
    Matrix3 rt = rotation.transpose();
    return {rt, -rt * translation};
  }
};

/// ‖RᵀR − I‖∞ (max-abs entry).
inline double orthonormality_error(const Matrix3& r) {
  return (r.transpose() * r - Matrix3::Identity()).cwiseAbs().maxCoeff();
}

inline Matrix3 skew(const Vector3& v) {
  Matrix3 s;
  s << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return s;
}

/// Rotation vector (axis·angle) of R.
inline Vector3 log_so3(const Matrix3& r) {
  Eigen::AngleAxisd aa(r);
  return aa.axis() * aa.angle();
}

inline Matrix3 exp_so3(const Vector3& w) {
  const double angle = w.norm();
  if (angle < 1e-300) return Matrix3::Identity();
  return Eigen::AngleAxisd(angle, w / angle).toRotationMatrix();
}

}  // namespace exosim
