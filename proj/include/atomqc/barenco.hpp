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

#include <vector>

#include "atomqc/circuit.hpp"

namespace atomqc {

/// U = e^{i alpha} RZ(beta) RY(gamma) RZ(delta).
struct ZyAngles {
  double alpha = 0, beta = 0, gamma = 0, delta = 0;

  Mat2 matrix() const {
    return std::polar(1.0, alpha) * rz_matrix(beta) * ry_matrix(gamma) *
           rz_matrix(delta);
  }
};

inline ZyAngles zy_decompose(const Mat2& u, const Tolerances& tol = {}) {
  if (!is_unitary2(u, tol.tol_unitary)) {
    throw Error(ErrorCode::NotUnitary, "zy_decompose: input is not unitary");
  }
  ZyAngles z;
  z.alpha = std::arg(u.determinant()) / 2;
  Mat2 su = std::polar(1.0, -z.alpha) * u;
  Complex a = su(0, 0), b = su(1, 0);
  double ma = std::abs(a), mb = std::abs(b);
  z.gamma = 2 * std::atan2(mb, ma);
  if (mb < tol.tol_zero) {
    z.beta = 0;
    z.delta = -2 * std::arg(a);
  } else if (ma < tol.tol_zero) {
    z.delta = 0;
    z.beta = 2 * std::arg(b);
  } else {
    z.beta = std::arg(b) - std::arg(a);
    z.delta = -std::arg(a) - std::arg(b);
  }
  // RZ(x + 2 pi) = -RZ(x): every full turn removed flips the sign once.
  for (double* angle : {&z.beta, &z.delta}) {
    double w = wrap_pi(*angle);
    long turns = std::lround((*angle - w) / (2 * kPi));
    if (turns % 2 != 0) z.alpha += kPi;
    *angle = w;
  }
  z.alpha = wrap_pi(z.alpha);
  return z;
}

/// A X B X C = e^{-i phase} U and A B C = I.
struct AbcDecomp {
  Mat2 a, b, c;
  double phase = 0;
};

inline AbcDecomp abc_decompose(const Mat2& u, const Tolerances& tol = {}) {
  ZyAngles z = zy_decompose(u, tol);
  AbcDecomp d;
  d.a = rz_matrix(z.beta) * ry_matrix(z.gamma / 2);
  d.b = ry_matrix(-z.gamma / 2) * rz_matrix(-(z.delta + z.beta) / 2);
  d.c = rz_matrix((z.delta - z.beta) / 2);
  d.phase = z.alpha;
  return d;
}

struct LoweringOptions {
  bool keep_toffoli = true;  // leave MCX with two controls as a Toffoli unit
  bool use_ladder = true;    // borrow idle qubits for C^m X when possible
};

namespace detail {

inline void emit_rotation(
    Circuit& out, GateKind kind, int q, double theta, const Tolerances& tol) {
  if (std::abs(theta) < tol.tol_zero) return;
  Gate g;
  g.kind = kind;
  g.qubits = {q};
  g.theta = theta;
  out.append(g, tol);
}

inline void require_width(int width) {
  if (width < 1) throw Error(ErrorCode::InvalidArgument, "width must be >= 1");
}

// X on every negative-polarity control.
inline void flip_negative(
    Circuit& out, const std::vector<int>& controls,
    const std::vector<bool>& polarities) {
  for (std::size_t k = 0; k < controls.size(); ++k) {
    if (!polarities.empty() && !polarities[k]) out.append(Gate::x(controls[k]));
  }
}

inline std::vector<int> idle_qubits(
    const std::vector<int>& controls, int target, int width) {
  std::vector<bool> busy(static_cast<std::size_t>(width), false);
  for (int c : controls) busy[static_cast<std::size_t>(c)] = true;
  busy[static_cast<std::size_t>(target)] = true;
  std::vector<int> idle;
  for (int q = 0; q < width; ++q) {
    if (!busy[static_cast<std::size_t>(q)]) idle.push_back(q);
  }
  return idle;
}

}  // namespace detail

/// Controlled-U over {RY, RZ, CNOT}: C, CNOT, B, CNOT, A on the target and
/// RZ(alpha) on the control, with alpha / 2 moved to the global phase.
inline Circuit lower_cu(
    int control, int target, const Mat2& u, int width, const Tolerances& tol = {}) {
  detail::require_width(width);
  Circuit out(width);
  out.validate(Gate::cu(control, target, u), tol);
  ZyAngles z = zy_decompose(u, tol);
  const double a_rz = z.beta, a_ry = z.gamma / 2;
  const double b_ry = -z.gamma / 2, b_rz = -(z.delta + z.beta) / 2;
  const double c_rz = (z.delta - z.beta) / 2;
  const bool b_trivial =
      std::abs(b_ry) < tol.tol_zero && std::abs(b_rz) < tol.tol_zero;

  detail::emit_rotation(out, GateKind::RZ, target, c_rz, tol);
  if (!b_trivial) {
    out.append(Gate::cnot(control, target));
    detail::emit_rotation(out, GateKind::RZ, target, b_rz, tol);
    detail::emit_rotation(out, GateKind::RY, target, b_ry, tol);
    out.append(Gate::cnot(control, target));
  }
  detail::emit_rotation(out, GateKind::RY, target, a_ry, tol);
  detail::emit_rotation(out, GateKind::RZ, target, a_rz, tol);
  if (std::abs(z.alpha) >= tol.tol_zero) {
    out.append(Gate::rz(control, z.alpha));
    out.add_phase(z.alpha / 2);
  }
  return out;
}

/// Toffoli as six CNOTs plus T/T-dagger rotations (T = e^{i pi/8} RZ(pi/4)).
inline Circuit toffoli_to_cnots(int a, int b, int t, int width) {
  Circuit out(width);
  auto t_gate = [&](int q, int sign) {
    out.append(Gate::rz(q, sign * kPi / 4));
    out.add_phase(sign * kPi / 8);
  };
  out.append(Gate::h(t));
  out.append(Gate::cnot(b, t));
  t_gate(t, -1);
  out.append(Gate::cnot(a, t));
  t_gate(t, +1);
  out.append(Gate::cnot(b, t));
  t_gate(t, -1);
  out.append(Gate::cnot(a, t));
  t_gate(b, +1);
  t_gate(t, +1);
  out.append(Gate::h(t));
  out.append(Gate::cnot(a, b));
  t_gate(a, +1);
  t_gate(b, -1);
  out.append(Gate::cnot(a, b));
  return out;
}

/// C^m X from 4(m - 2) Toffolis, borrowing m - 2 idle qubits in any state.
/// Idle qubits come back unchanged.
inline Circuit lower_mcx_ladder(
    const std::vector<int>& controls, int target, const std::vector<int>& idle,
    int width, const LoweringOptions& opts = {}) {
  detail::require_width(width);
  const std::size_t m = controls.size();
  if (m < 3) {
    throw Error(ErrorCode::InvalidArgument, "ladder needs at least 3 controls");
  }
  if (idle.size() < m - 2) {
    throw Error(
        ErrorCode::InsufficientIdleQubits,
        "ladder needs " + std::to_string(m - 2) + " idle qubits, have " +
            std::to_string(idle.size()));
  }
  Circuit out(width);
  {
    std::vector<int> all = controls;
    all.insert(all.end(), idle.begin(), idle.begin() + static_cast<long>(m - 2));
    all.push_back(target);
    Gate probe = Gate::mcx(
        std::vector<int>(all.begin(), all.end() - 1),
        std::vector<bool>(all.size() - 1, true), target);
    out.validate(probe);
  }
  auto toffoli = [&](int a, int b, int t) {
    if (opts.keep_toffoli) {
      out.append(Gate::toffoli(a, b, t));
    } else {
      out.append(toffoli_to_cnots(a, b, t, width));
    }
  };
  // Chain element k (k = 2 .. m-1, zero-based control index) targets
  // anc[k - 1], where anc[m - 2] is the real target.
  auto anc = [&](std::size_t k) {
    return k == m - 1 ? target : idle[k - 1];
  };
  auto sweep = [&](std::size_t top) {
    for (std::size_t k = top; k >= 2; --k) toffoli(controls[k], anc(k - 1), anc(k));
    toffoli(controls[0], controls[1], anc(1));
    for (std::size_t k = 2; k <= top; ++k) toffoli(controls[k], anc(k - 1), anc(k));
  };
  sweep(m - 1);
  sweep(m - 2);
  return out;
}

inline Circuit lower_mcu(
    const std::vector<int>& controls, const std::vector<bool>& polarities,
    int target, const Mat2& u, int width, const LoweringOptions& opts = {},
    const Tolerances& tol = {});

/// C^m X with mixed polarities. Two controls stay a Toffoli unless
/// `opts.keep_toffoli` is off; three or more use the ladder when enough idle
/// qubits exist and the square-root recursion otherwise.
inline Circuit lower_mcx(
    const std::vector<int>& controls, const std::vector<bool>& polarities,
    int target, int width, const LoweringOptions& opts = {},
    const Tolerances& tol = {}) {
  detail::require_width(width);
  if (controls.empty()) {
    throw Error(ErrorCode::InvalidArgument, "lower_mcx needs a control");
  }
  Circuit out(width);
  out.validate(
      Gate::mcx(controls, std::vector<bool>(controls.size(), true), target));
  detail::flip_negative(out, controls, polarities);
  const std::size_t m = controls.size();
  if (m == 1) {
    out.append(Gate::cnot(controls[0], target));
  } else if (m == 2) {
    if (opts.keep_toffoli) {
      out.append(Gate::toffoli(controls[0], controls[1], target));
    } else {
      out.append(toffoli_to_cnots(controls[0], controls[1], target, width));
    }
  } else {
    auto idle = detail::idle_qubits(controls, target, width);
    if (opts.use_ladder && idle.size() >= m - 2) {
      out.append(lower_mcx_ladder(controls, target, idle, width, opts));
    } else {
      out.append(lower_mcu(
          controls, std::vector<bool>(m, true), target, x_matrix(), width, opts,
          tol));
    }
  }
  detail::flip_negative(out, controls, polarities);
  return out;
}

/// C^m U: CV(last -> t), C^{m-1}X(rest -> last), CV^dag, C^{m-1}X, then
/// C^{m-1}V(rest -> t), with V the principal square root of U.
inline Circuit lower_mcu(
    const std::vector<int>& controls, const std::vector<bool>& polarities,
    int target, const Mat2& u, int width, const LoweringOptions& opts,
    const Tolerances& tol) {
  detail::require_width(width);
  if (controls.empty()) {
    throw Error(ErrorCode::InvalidArgument, "lower_mcu needs a control");
  }
  if (!polarities.empty() && polarities.size() != controls.size()) {
    throw Error(ErrorCode::InvalidArgument, "one polarity per control");
  }
  Circuit out(width);
  out.validate(
      Gate::mcu(controls, std::vector<bool>(controls.size(), true), target, u),
      tol);
  detail::flip_negative(out, controls, polarities);
  const std::size_t m = controls.size();
  if (m == 1) {
    out.append(lower_cu(controls[0], target, u, width, tol));
  } else {
    Mat2 v = unitary_sqrt(Matrix(u), tol);
    const int last = controls.back();
    std::vector<int> rest(controls.begin(), controls.end() - 1);
    std::vector<bool> pos(rest.size(), true);
    out.append(lower_cu(last, target, v, width, tol));
    out.append(lower_mcx(rest, pos, last, width, opts, tol));
    out.append(lower_cu(last, target, v.adjoint(), width, tol));
    out.append(lower_mcx(rest, pos, last, width, opts, tol));
    out.append(lower_mcu(rest, pos, target, v, width, opts, tol));
  }
  detail::flip_negative(out, controls, polarities);
  return out;
}

/// Rewrites CU, MCU, MCX and multi-qubit DIAG_PHASE into single-qubit gates,
/// CNOT and (when kept) Toffoli. Other gates pass through unchanged.
inline Circuit lower_circuit(
    const Circuit& c, const LoweringOptions& opts = {}, const Tolerances& tol = {}) {
  const int w = c.n_qubits();
  Circuit out(w, c.global_phase());
  for (const Gate& g : c.gates()) {
    std::vector<int> ctrl(g.qubits.begin(), g.qubits.end() - (g.qubits.empty() ? 0 : 1));
    switch (g.kind) {
      case GateKind::CU:
        out.append(lower_cu(g.qubits[0], g.target(), g.matrix, w, tol));
        break;
      case GateKind::MCU:
        out.append(lower_mcu(ctrl, g.polarities, g.target(), g.matrix, w, opts, tol));
        break;
      case GateKind::MCX:
        out.append(lower_mcx(ctrl, g.polarities, g.target(), w, opts, tol));
        break;
      case GateKind::DIAG_PHASE:
        if (g.qubits.size() == 1) {
          out.append(g, tol);
        } else {
          Mat2 d = Mat2::Identity();
          int hot = g.polarities.back() ? 1 : 0;
          d(hot, hot) = std::polar(1.0, g.gamma);
          std::vector<bool> pols(g.polarities.begin(), g.polarities.end() - 1);
          out.append(lower_mcu(ctrl, pols, g.target(), d, w, opts, tol));
        }
        break;
      default: out.append(g, tol); break;
    }
  }
  return out;
}

}  // namespace atomqc
