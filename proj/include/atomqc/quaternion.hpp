// Copyright 2026 The atomqc Authors
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

#pragma once

#include <array>
#include <cmath>
#include <utility>

#include "atomqc/circuit.hpp"

namespace atomqc {

/// q = w + x i + y j + z k. A unit quaternion stands for the SU(2) element
/// w I - i (x X + y Y + z Z), so the Hamilton product matches the matrix
/// product.
struct Quaternion {
  double w = 1, x = 0, y = 0, z = 0;

  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
  double vector_norm() const { return std::sqrt(x * x + y * y + z * z); }
  Quaternion operator-() const { return {-w, -x, -y, -z}; }

  static Quaternion rotation(double angle, double ux, double uy, double uz) {
    double s = std::sin(angle / 2);
    return {std::cos(angle / 2), s * ux, s * uy, s * uz};
  }

  Mat2 matrix() const {
    Mat2 m;
    m << Complex(w, -z), Complex(-y, -x), Complex(y, -x), Complex(w, z);
    return m;
  }

  friend bool operator==(const Quaternion&, const Quaternion&) = default;
};

/// Hamilton product q2 * q1: q1 acts first.
inline Quaternion quaternion_multiply(const Quaternion& q2, const Quaternion& q1) {
  return {
      q2.w * q1.w - q2.x * q1.x - q2.y * q1.y - q2.z * q1.z,
      q2.w * q1.x + q2.x * q1.w + q2.y * q1.z - q2.z * q1.y,
      q2.w * q1.y - q2.x * q1.z + q2.y * q1.w + q2.z * q1.x,
      q2.w * q1.z + q2.x * q1.y - q2.y * q1.x + q2.z * q1.w,
  };
}

inline Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return quaternion_multiply(a, b);
}

/// U = e^{i phase} q.matrix() with phase = arg(det U) / 2.
inline std::pair<Quaternion, double> quaternion_from_unitary(
    const Mat2& u, const Tolerances& tol = {}) {
  if (!is_unitary2(u, tol.tol_unitary)) {
    throw Error(ErrorCode::NotUnitary, "quaternion_from_unitary: not unitary");
  }
  double phase = std::arg(u.determinant()) / 2;
  Mat2 s = std::polar(1.0, -phase) * u;
  Quaternion q{
      (s(0, 0).real() + s(1, 1).real()) / 2,
      -(s(1, 0).imag() + s(0, 1).imag()) / 2,
      (s(1, 0).real() - s(0, 1).real()) / 2,
      (s(1, 1).imag() - s(0, 0).imag()) / 2,
  };
  double nrm = q.norm();
  q = {q.w / nrm, q.x / nrm, q.y / nrm, q.z / nrm};
  return {q, phase};
}

/// Rotation by alpha about axis (cos phi sin beta, sin phi sin beta, cos beta).
struct AxisAngle {
  double alpha = 0;
  std::array<double, 3> axis{0, 0, 1};
  double beta = 0;
  double phi_axis = 0;
};

inline AxisAngle to_axis_angle(const Quaternion& q) {
  AxisAngle a;
  double r = q.vector_norm();
  if (r <= 1e-12) return a;
  a.alpha = wrap_2pi(2 * std::atan2(r, q.w));
  a.axis = {q.x / r, q.y / r, q.z / r};
  a.beta = std::acos(std::clamp(a.axis[2], -1.0, 1.0));
  a.phi_axis = std::atan2(a.axis[1], a.axis[0]);
  return a;
}

/// Quaternion of the native pulse C(theta, phi): a rotation by theta about
/// (sin phi, cos phi, 0).
inline Quaternion c_quaternion(double theta, double phi) {
  return Quaternion::rotation(theta, std::sin(phi), std::cos(phi), 0);
}

/// U = e^{i gamma} C(theta2, phi2) C(theta1, phi1); pulse 1 fires first.
struct TwoPulse {
  double theta1 = 0, phi1 = 0, theta2 = 0, phi2 = 0;
  double gamma = 0;

  Mat2 matrix() const {
    return std::polar(1.0, gamma) * c_matrix(theta2, phi2) * c_matrix(theta1, phi1);
  }
};

namespace detail {

// Equal-area pulses about azimuths psi_bar +- D/2 compose to
// w = 1 - S (1 + cos D), z = S sin D, (x, y) = 2 sqrt(S (1 - S)) cos(D/2)
// (cos psi_bar, sin psi_bar), with S = sin^2(theta / 2).
inline TwoPulse solve_two_pulse(const Quaternion& q, double gamma) {
  TwoPulse p;
  p.gamma = gamma;
  const double r2 = q.x * q.x + q.y * q.y + q.z * q.z;
  if (r2 == 0) return p;
  const double a = q.w > 0 ? r2 / (1 + q.w) : 1 - q.w;  // 1 - w without cancellation
  // S and 1 - S = (x^2 + y^2) / (2a) are each formed without cancellation.
  const double s = (a * a + q.z * q.z) / (2 * a);
  const double c = (q.x * q.x + q.y * q.y) / (2 * a);
  const double d = 2 * std::atan2(q.z, a);
  const double theta = 2 * std::atan2(std::sqrt(s), std::sqrt(c));
  const double eq = std::hypot(q.x, q.y);
  const double psi = eq > 0 ? std::atan2(q.y, q.x) : 0.0;
  p.theta1 = p.theta2 = theta;
  p.phi1 = wrap_2pi(kPi / 2 - (psi + d / 2));
  p.phi2 = wrap_2pi(kPi / 2 - (psi - d / 2));
  return p;
}

inline double two_pulse_error(const TwoPulse& p, const Mat2& u) {
  return phase_distance(Matrix(p.matrix()), Matrix(u));
}

// Newton iterations on (S, D) for the w and z components.
inline TwoPulse polish_two_pulse(const Quaternion& q, TwoPulse p) {
  double s = std::pow(std::sin(p.theta1 / 2), 2);
  double d = (kPi / 2 - p.phi1) - (kPi / 2 - p.phi2);
  double psi = kPi / 2 - p.phi1 - d / 2;
  for (int it = 0; it < 50; ++it) {
    double f1 = 1 - s * (1 + std::cos(d)) - q.w;
    double f2 = s * std::sin(d) - q.z;
    if (std::abs(f1) + std::abs(f2) < 1e-16) break;
    double j11 = -(1 + std::cos(d)), j12 = s * std::sin(d);
    double j21 = std::sin(d), j22 = s * std::cos(d);
    double det = j11 * j22 - j12 * j21;
    if (std::abs(det) < 1e-300) break;
    s -= (f1 * j22 - f2 * j12) / det;
    d -= (j11 * f2 - j21 * f1) / det;
    s = std::clamp(s, 0.0, 1.0);
  }
  p.theta1 = p.theta2 = 2 * std::asin(std::sqrt(s));
  p.phi1 = wrap_2pi(kPi / 2 - (psi + d / 2));
  p.phi2 = wrap_2pi(kPi / 2 - (psi - d / 2));
  return p;
}

}  // namespace detail

/// Two equal-area native pulses (plus a global phase) for any single-qubit
/// unitary. Both signs of the quaternion are solved and the shorter pulse
/// wins; ties keep the positive sign.
inline TwoPulse two_pulse_synthesis(const Mat2& u, const Tolerances& tol = {}) {
  auto [q, gamma] = quaternion_from_unitary(u, tol);
  std::array<std::pair<Quaternion, TwoPulse>, 2> cands{{
      {q, detail::solve_two_pulse(q, gamma)},
      {-q, detail::solve_two_pulse(-q, wrap_pi(gamma + kPi))},
  }};
  if (cands[1].second.theta1 < cands[0].second.theta1 - 1e-15) {
    std::swap(cands[0], cands[1]);
  }
  constexpr double kAccept = 1e-12;
  if (detail::two_pulse_error(cands[0].second, u) <= kAccept) return cands[0].second;
  for (const auto& [qq, p] : cands) {
    TwoPulse polished = detail::polish_two_pulse(qq, p);
    if (detail::two_pulse_error(polished, u) <= tol.tol_recon) return polished;
    if (detail::two_pulse_error(p, u) <= tol.tol_recon) return p;
  }
  throw Error(ErrorCode::SynthesisFailure, "no two-pulse solution reconstructs the input");
}

}  // namespace atomqc
