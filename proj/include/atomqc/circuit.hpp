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

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "atomqc/numerics.hpp"

// Qubit 0 is the most significant bit of a basis-state index: |q0 q1 ... q_{n-1}>
// has index sum_k q_k 2^{n-1-k}. Every module uses this convention.

namespace atomqc {

enum class GateKind {
  RX,
  RY,
  RZ,
  H,
  X,
  U,  // arbitrary single-qubit unitary carried as a matrix
  C,  // neutral-atom pulse C(theta, phi)
  CNOT,
  CZ,
  CCZ,
  CU,
  MCU,
  MCX,
  PHASE,       // global phase e^{i gamma}
  DIAG_PHASE,  // e^{i gamma} on basis states matching a bit pattern
};

constexpr std::string_view to_string(GateKind k) {
  switch (k) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::U: return "U";
    case GateKind::C: return "C";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
    case GateKind::CCZ: return "CCZ";
    case GateKind::CU: return "CU";
    case GateKind::MCU: return "MCU";
    case GateKind::MCX: return "MCX";
    case GateKind::PHASE: return "PHASE";
    case GateKind::DIAG_PHASE: return "DIAG_PHASE";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Standard 2x2 matrices

inline Mat2 rx_matrix(double t) {
  Mat2 m;
  m << std::cos(t / 2), -kI * std::sin(t / 2), -kI * std::sin(t / 2),
      std::cos(t / 2);
  return m;
}

inline Mat2 ry_matrix(double t) {
  Mat2 m;
  m << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2);
  return m;
}

inline Mat2 rz_matrix(double t) {
  Mat2 m;
  m << std::polar(1.0, -t / 2), 0, 0, std::polar(1.0, t / 2);
  return m;
}

inline Mat2 h_matrix() {
  Mat2 m;
  m << 1, 1, 1, -1;
  return m * kInvSqrt2;
}

inline Mat2 x_matrix() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}

/// The neutral-atom native pulse:
/// [[cos(t/2), -e^{i phi} sin(t/2)], [e^{-i phi} sin(t/2), cos(t/2)]].
inline Mat2 c_matrix(double theta, double phi) {
  Mat2 m;
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  m << c, -std::polar(s, phi), std::polar(s, -phi), c;
  return m;
}

inline bool is_unitary2(const Mat2& m, double tol) {
  return ((m.adjoint() * m) - Mat2::Identity()).cwiseAbs().maxCoeff() <= tol;
}

// ---------------------------------------------------------------------------
// Gate

/// One instruction of the IR. `qubits` lists controls first and the target
/// last. Which parameter fields are meaningful depends on `kind`:
///  - RX/RY/RZ: theta
///  - C: theta (pulse area), phi (laser phase)
///  - U/CU/MCU: matrix
///  - MCU/MCX: polarities (one per control, true = fires on |1>)
///  - PHASE: gamma, no qubits
///  - DIAG_PHASE: gamma, polarities = required bit for every listed qubit
struct Gate {
  GateKind kind = GateKind::U;
  std::vector<int> qubits;
  double theta = 0;
  double phi = 0;
  double gamma = 0;
  Mat2 matrix = Mat2::Identity();
  std::vector<bool> polarities;

  static Gate rx(int q, double t) { return rot(GateKind::RX, q, t); }
  static Gate ry(int q, double t) { return rot(GateKind::RY, q, t); }
  static Gate rz(int q, double t) { return rot(GateKind::RZ, q, t); }
  static Gate h(int q) { return {GateKind::H, {q}}; }
  static Gate x(int q) { return {GateKind::X, {q}}; }
  static Gate unitary(int q, const Mat2& m) {
    Gate g{GateKind::U, {q}};
    g.matrix = m;
    return g;
  }
  static Gate c(int q, double theta, double phi) {
    Gate g{GateKind::C, {q}};
    g.theta = theta;
    g.phi = phi;
    return g;
  }
  static Gate cnot(int control, int target) {
    return {GateKind::CNOT, {control, target}};
  }
  static Gate cz(int a, int b) { return {GateKind::CZ, {a, b}}; }
  static Gate ccz(int a, int b, int c) { return {GateKind::CCZ, {a, b, c}}; }
  static Gate cu(int control, int target, const Mat2& m) {
    Gate g{GateKind::CU, {control, target}};
    g.matrix = m;
    return g;
  }
  static Gate mcu(
      std::vector<int> controls, std::vector<bool> pols, int target,
      const Mat2& m) {
    Gate g{GateKind::MCU, std::move(controls)};
    g.qubits.push_back(target);
    g.polarities = std::move(pols);
    g.matrix = m;
    return g;
  }
  static Gate mcx(std::vector<int> controls, std::vector<bool> pols, int target) {
    Gate g{GateKind::MCX, std::move(controls)};
    g.qubits.push_back(target);
    g.polarities = std::move(pols);
    return g;
  }
  static Gate toffoli(int a, int b, int target) {
    return mcx({a, b}, {true, true}, target);
  }
  static Gate phase(double gamma) {
    Gate g{GateKind::PHASE, {}};
    g.gamma = gamma;
    return g;
  }
  static Gate diag_phase(
      std::vector<int> qubits, std::vector<bool> pattern, double gamma) {
    Gate g{GateKind::DIAG_PHASE, std::move(qubits)};
    g.polarities = std::move(pattern);
    g.gamma = gamma;
    return g;
  }

  int target() const { return qubits.back(); }
  std::size_t num_controls() const {
    switch (kind) {
      case GateKind::CNOT:
      case GateKind::CU: return 1;
      case GateKind::MCU:
      case GateKind::MCX: return qubits.size() - 1;
      default: return 0;
    }
  }
  bool is_single_qubit() const { return qubits.size() == 1; }

  /// Basis index of a DIAG_PHASE pattern over its listed qubits.
  std::size_t basis_index() const {
    std::size_t idx = 0;
    for (bool b : polarities) idx = (idx << 1) | (b ? 1u : 0u);
    return idx;
  }

  /// 2x2 action of a single-qubit gate (or the controlled block of
  /// CNOT/CU/MCU/MCX).
  Mat2 matrix2() const {
    switch (kind) {
      case GateKind::RX: return rx_matrix(theta);
      case GateKind::RY: return ry_matrix(theta);
      case GateKind::RZ: return rz_matrix(theta);
      case GateKind::H: return h_matrix();
      case GateKind::X:
      case GateKind::CNOT:
      case GateKind::MCX: return x_matrix();
      case GateKind::C: return c_matrix(theta, phi);
      case GateKind::U:
      case GateKind::CU:
      case GateKind::MCU: return matrix;
      case GateKind::DIAG_PHASE:
        if (qubits.size() == 1) {
          Mat2 m = Mat2::Identity();
          m(polarities[0] ? 1 : 0, polarities[0] ? 1 : 0) =
              std::polar(1.0, gamma);
          return m;
        }
        break;
      default: break;
    }
    throw Error(
        ErrorCode::InvalidArgument,
        std::string("no 2x2 matrix for gate ") + std::string(to_string(kind)));
  }

  friend bool operator==(const Gate& a, const Gate& b) {
    return a.kind == b.kind && a.qubits == b.qubits && a.theta == b.theta &&
           a.phi == b.phi && a.gamma == b.gamma && a.matrix == b.matrix &&
           a.polarities == b.polarities;
  }

 private:
  static Gate rot(GateKind k, int q, double t) {
    Gate g{k, {q}};
    g.theta = t;
    return g;
  }
};

// ---------------------------------------------------------------------------
// Circuit

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int n_qubits, double global_phase = 0)
      : n_qubits_(n_qubits), global_phase_(wrap_pi(global_phase)) {
    if (n_qubits < 1) {
      throw Error(ErrorCode::InvalidArgument, "circuit needs at least one qubit");
    }
  }

  int n_qubits() const { return n_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  double global_phase() const { return global_phase_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  void add_phase(double gamma) { global_phase_ = wrap_pi(global_phase_ + gamma); }
  void set_phase(double gamma) { global_phase_ = wrap_pi(gamma); }

  /// Validates and canonicalizes `g`, then appends it. Rotation angles are
  /// folded into [0, 2pi); the sign flip this causes goes to the global phase.
  void append(Gate g, const Tolerances& tol = {}) {
    validate(g, tol);
    switch (g.kind) {
      case GateKind::RX:
      case GateKind::RY:
      case GateKind::RZ:
      case GateKind::C: {
        double t = wrap_2pi(g.theta);
        double turns = std::round((g.theta - t) / (2 * kPi));
        if (std::fmod(std::abs(turns), 2.0) == 1.0) add_phase(kPi);
        g.theta = t;
        if (g.kind == GateKind::C) g.phi = wrap_2pi(g.phi);
        break;
      }
      case GateKind::PHASE:
      case GateKind::DIAG_PHASE: g.gamma = wrap_pi(g.gamma); break;
      default: break;
    }
    gates_.push_back(std::move(g));
  }

  /// Appends every gate of a same-width fragment and its global phase.
  void append(const Circuit& fragment) {
    if (fragment.n_qubits_ != n_qubits_) {
      throw Error(ErrorCode::DimMismatch, "fragment width differs from circuit");
    }
    gates_.insert(gates_.end(), fragment.gates_.begin(), fragment.gates_.end());
    add_phase(fragment.global_phase_);
  }

  void validate(const Gate& g, const Tolerances& tol = {}) const {
    for (std::size_t a = 0; a < g.qubits.size(); ++a) {
      int q = g.qubits[a];
      if (q < 0 || q >= n_qubits_) {
        throw Error(
            ErrorCode::QubitOutOfRange,
            "qubit " + std::to_string(q) + " outside width " +
                std::to_string(n_qubits_));
      }
      for (std::size_t b = 0; b < a; ++b) {
        if (g.qubits[b] == q) {
          throw Error(
              ErrorCode::DuplicateQubit,
              "qubit " + std::to_string(q) + " used twice in one gate");
        }
      }
    }
    std::size_t arity = 0;
    bool fixed = true;
    switch (g.kind) {
      case GateKind::CNOT:
      case GateKind::CZ:
      case GateKind::CU: arity = 2; break;
      case GateKind::CCZ: arity = 3; break;
      case GateKind::PHASE: arity = 0; break;
      case GateKind::MCU:
      case GateKind::MCX:
        fixed = false;
        if (g.qubits.size() < 2 || g.polarities.size() != g.qubits.size() - 1) {
          throw Error(
              ErrorCode::InvalidArgument,
              "multi-controlled gate needs >=1 control and one polarity each");
        }
        break;
      case GateKind::DIAG_PHASE:
        fixed = false;
        if (g.qubits.empty() || g.polarities.size() != g.qubits.size()) {
          throw Error(
              ErrorCode::InvalidArgument,
              "DIAG_PHASE needs one pattern bit per qubit");
        }
        break;
      default: arity = 1; break;
    }
    if (fixed && g.qubits.size() != arity) {
      throw Error(
          ErrorCode::InvalidArgument,
          std::string(to_string(g.kind)) + " expects " + std::to_string(arity) +
              " qubits");
    }
    if (g.kind == GateKind::U || g.kind == GateKind::CU ||
        g.kind == GateKind::MCU) {
      if (!is_unitary2(g.matrix, tol.tol_unitary)) {
        throw Error(ErrorCode::NotUnitary, "embedded 2x2 matrix is not unitary");
      }
    }
  }

 private:
  int n_qubits_ = 1;
  std::vector<Gate> gates_;
  double global_phase_ = 0;
};

/// Value-semantics append: returns a copy of `c` extended by `g`.
inline Circuit append_gate(Circuit c, Gate g, const Tolerances& tol = {}) {
  c.append(std::move(g), tol);
  return c;
}

// ---------------------------------------------------------------------------
// Gate statistics

inline bool is_entangling_kind(GateKind k) {
  switch (k) {
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::CCZ:
    case GateKind::CU:
    case GateKind::MCU:
    case GateKind::MCX: return true;
    default: return false;
  }
}

struct GateCounts {
  std::map<GateKind, std::size_t> per_kind;
  std::size_t entangling_total = 0;
  std::size_t single_qubit_total = 0;

  std::size_t count(GateKind k) const {
    auto it = per_kind.find(k);
    return it == per_kind.end() ? 0 : it->second;
  }

  GateCounts& operator+=(const GateCounts& o) {
    for (auto [k, v] : o.per_kind) per_kind[k] += v;
    entangling_total += o.entangling_total;
    single_qubit_total += o.single_qubit_total;
    return *this;
  }
  friend GateCounts operator+(GateCounts a, const GateCounts& b) {
    return a += b;
  }
  friend bool operator==(const GateCounts&, const GateCounts&) = default;
};

inline GateCounts gate_counts(const Circuit& c) {
  GateCounts out;
  for (const auto& g : c.gates()) {
    ++out.per_kind[g.kind];
    if (is_entangling_kind(g.kind)) ++out.entangling_total;
    if (g.is_single_qubit()) ++out.single_qubit_total;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Single-qubit runs

struct SingleQubitRun {
  int qubit = 0;
  std::vector<std::size_t> gate_indices;  // increasing
};

/// Maximal runs of single-qubit gates per qubit. A run on qubit q is only
/// broken by a multi-qubit gate that touches q. Runs are ordered by their
/// first gate index.
inline std::vector<SingleQubitRun> collect_single_qubit_runs(const Circuit& c) {
  std::vector<SingleQubitRun> runs;
  std::vector<std::ptrdiff_t> open(static_cast<std::size_t>(c.n_qubits()), -1);
  const auto& gates = c.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    if (g.is_single_qubit()) {
      auto q = static_cast<std::size_t>(g.qubits[0]);
      if (open[q] < 0) {
        open[q] = static_cast<std::ptrdiff_t>(runs.size());
        runs.push_back({g.qubits[0], {}});
      }
      runs[static_cast<std::size_t>(open[q])].gate_indices.push_back(i);
    } else {
      for (int q : g.qubits) open[static_cast<std::size_t>(q)] = -1;
    }
  }
  return runs;
}

}  // namespace atomqc
