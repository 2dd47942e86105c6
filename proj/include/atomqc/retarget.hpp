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

#include <utility>
#include <vector>

#include "atomqc/quaternion.hpp"

namespace atomqc {

struct RetargetOptions {
  Tolerances tol;
  bool one_pulse_shortcut = true;
  // A fused run whose rotation part has norm below this emits nothing.
  double identity_threshold = 1e-14;
};

/// Native pulses for one fused single-qubit unitary.
struct PulsePlan {
  std::vector<std::pair<double, double>> pulses;  // (theta, phi), firing order
  double gamma = 0;
};

/// Zero pulses for the identity, one for an equatorial rotation when the
/// shortcut is on and reconstructs exactly, two otherwise.
inline PulsePlan plan_pulses(const Mat2& u, const RetargetOptions& opts = {}) {
  auto [q, gamma] = quaternion_from_unitary(u, opts.tol);
  PulsePlan plan;
  if (q.vector_norm() < opts.identity_threshold) {
    plan.gamma = q.w >= 0 ? gamma : wrap_pi(gamma + kPi);
    return plan;
  }
  if (opts.one_pulse_shortcut) {
    AxisAngle aa = to_axis_angle(q);
    if (std::abs(std::cos(aa.beta)) < 1e-9) {
      double phi = wrap_2pi(kPi / 2 - aa.phi_axis);
      Mat2 one = std::polar(1.0, gamma) * c_matrix(aa.alpha, phi);
      if (phase_distance(Matrix(one), Matrix(u)) <= 1e-12) {
        plan.pulses.emplace_back(aa.alpha, phi);
        plan.gamma = gamma;
        return plan;
      }
    }
  }
  TwoPulse tp = two_pulse_synthesis(u, opts.tol);
  plan.pulses.emplace_back(tp.theta1, tp.phi1);
  plan.pulses.emplace_back(tp.theta2, tp.phi2);
  plan.gamma = tp.gamma;
  return plan;
}

/// Rewrites a circuit over single-qubit gates, CNOT, CZ, Toffoli and CCZ
/// into {C, CZ, CCZ}. Entanglers become CZ / CCZ between RY(-pi/2) and
/// RY(pi/2) on the target, then every maximal single-qubit run is fused and
/// replaced by at most two pulses at the position of its first gate.
inline Circuit retarget_circuit(const Circuit& c, const RetargetOptions& opts = {}) {
  const int n = c.n_qubits();
  Circuit step1(n, c.global_phase());
  for (const Gate& g : c.gates()) {
    switch (g.kind) {
      case GateKind::CNOT:
        step1.append(Gate::ry(g.target(), -kPi / 2));
        step1.append(Gate::cz(g.qubits[0], g.target()));
        step1.append(Gate::ry(g.target(), kPi / 2));
        break;
      case GateKind::MCX: {
        if (g.qubits.size() != 3) {
          throw Error(
              ErrorCode::UnsupportedGate,
              "MCX with " + std::to_string(g.qubits.size() - 1) +
                  " controls must be lowered before retargeting");
        }
        for (int k = 0; k < 2; ++k) {
          if (!g.polarities[k]) step1.append(Gate::x(g.qubits[k]));
        }
        step1.append(Gate::ry(g.target(), -kPi / 2));
        step1.append(Gate::ccz(g.qubits[0], g.qubits[1], g.target()));
        step1.append(Gate::ry(g.target(), kPi / 2));
        for (int k = 0; k < 2; ++k) {
          if (!g.polarities[k]) step1.append(Gate::x(g.qubits[k]));
        }
        break;
      }
      case GateKind::CZ:
      case GateKind::CCZ: step1.append(g); break;
      case GateKind::PHASE: step1.add_phase(g.gamma); break;
      case GateKind::CU:
      case GateKind::MCU:
        throw Error(
            ErrorCode::UnsupportedGate,
            std::string(to_string(g.kind)) + " must be lowered before retargeting");
      default:
        if (!g.is_single_qubit()) {
          throw Error(
              ErrorCode::UnsupportedGate,
              std::string(to_string(g.kind)) + " on several qubits cannot be retargeted");
        }
        step1.append(g, opts.tol);
        break;
    }
  }

  const auto runs = collect_single_qubit_runs(step1);
  const auto& gates = step1.gates();
  std::vector<std::ptrdiff_t> run_at(gates.size(), -1);
  for (std::size_t r = 0; r < runs.size(); ++r) {
    run_at[runs[r].gate_indices.front()] = static_cast<std::ptrdiff_t>(r);
  }

  Circuit out(n, step1.global_phase());
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    if (!g.is_single_qubit()) {
      out.append(g);
      continue;
    }
    if (run_at[i] < 0) continue;
    const SingleQubitRun& run = runs[static_cast<std::size_t>(run_at[i])];
    Mat2 m = Mat2::Identity();
    for (std::size_t idx : run.gate_indices) m = gates[idx].matrix2() * m;
    PulsePlan plan = plan_pulses(m, opts);
    for (auto [theta, phi] : plan.pulses) out.append(Gate::c(run.qubit, theta, phi));
    out.add_phase(plan.gamma);
  }
  return out;
}

/// True when every gate is C, CZ or CCZ.
inline bool is_native(const Circuit& c) {
  for (const Gate& g : c.gates()) {
    if (g.kind != GateKind::C && g.kind != GateKind::CZ && g.kind != GateKind::CCZ) {
      return false;
    }
  }
  return true;
}

}  // namespace atomqc
