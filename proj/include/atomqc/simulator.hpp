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

#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>

#include "atomqc/circuit.hpp"

namespace atomqc {

namespace detail {

inline std::size_t qubit_bit(int q, int n) {
  return std::size_t{1} << (n - 1 - q);
}

// rows r with (r & mask) == value get x_r <- phase * x_r
inline void scale_rows(Matrix& m, std::size_t mask, std::size_t value, Complex phase) {
  const auto dim = static_cast<std::size_t>(m.rows());
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Complex* col = m.col(c).data();
    for (std::size_t r = 0; r < dim; ++r) {
      if ((r & mask) == value) col[r] *= phase;
    }
  }
}

// 2x2 block on target bit `tb` for rows whose control bits match.
inline void apply_block(
    Matrix& m, std::size_t mask, std::size_t value, std::size_t tb,
    const Mat2& u) {
  const auto dim = static_cast<std::size_t>(m.rows());
  const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Complex* col = m.col(c).data();
    for (std::size_t r = 0; r < dim; ++r) {
      if ((r & tb) || (r & mask) != value) continue;
      Complex a = col[r], b = col[r | tb];
      col[r] = u00 * a + u01 * b;
      col[r | tb] = u10 * a + u11 * b;
    }
  }
}

}  // namespace detail

/// In-place m <- G m, where G is the full-width embedding of `g` on `n` qubits.
inline void apply_gate(Matrix& m, const Gate& g, int n) {
  if (m.rows() != (Eigen::Index{1} << n)) {
    throw Error(ErrorCode::DimMismatch, "apply_gate: matrix height != 2^n");
  }
  for (int q : g.qubits) {
    if (q < 0 || q >= n) {
      throw Error(ErrorCode::QubitOutOfRange, "qubit " + std::to_string(q));
    }
  }
  using detail::qubit_bit;
  switch (g.kind) {
    case GateKind::PHASE:
      m *= std::polar(1.0, g.gamma);
      return;
    case GateKind::CZ:
    case GateKind::CCZ: {
      std::size_t mask = 0;
      for (int q : g.qubits) mask |= qubit_bit(q, n);
      detail::scale_rows(m, mask, mask, Complex(-1));
      return;
    }
    case GateKind::DIAG_PHASE: {
      std::size_t mask = 0, value = 0;
      for (std::size_t k = 0; k < g.qubits.size(); ++k) {
        std::size_t b = qubit_bit(g.qubits[k], n);
        mask |= b;
        if (g.polarities[k]) value |= b;
      }
      detail::scale_rows(m, mask, value, std::polar(1.0, g.gamma));
      return;
    }
    default: break;
  }
  std::size_t mask = 0, value = 0;
  const std::size_t nc = g.num_controls();
  for (std::size_t k = 0; k < nc; ++k) {
    std::size_t b = qubit_bit(g.qubits[k], n);
    mask |= b;
    bool pol = g.polarities.empty() ? true : g.polarities[k];
    if (pol) value |= b;
  }
  detail::apply_block(m, mask, value, qubit_bit(g.target(), n), g.matrix2());
}

/// 2^n x 2^n embedding of one gate.
inline Matrix gate_matrix(const Gate& g, int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxSimQubits) {
    throw Error(ErrorCode::SizeTooLarge, "gate_matrix: width out of range");
  }
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Matrix m = Matrix::Identity(dim, dim);
  apply_gate(m, g, n_qubits);
  return m;
}

/// Left-multiplies every gate of `c` onto `m` in time order.
inline void apply_circuit(Matrix& m, const Circuit& c) {
  for (const auto& g : c.gates()) apply_gate(m, g, c.n_qubits());
  m *= std::polar(1.0, c.global_phase());
}

inline Matrix circuit_unitary(const Circuit& c) {
  if (c.n_qubits() > kMaxSimQubits) {
    throw Error(
        ErrorCode::SizeTooLarge,
        "cannot simulate " + std::to_string(c.n_qubits()) + " qubits");
  }
  const Eigen::Index dim = Eigen::Index{1} << c.n_qubits();
  Matrix m = Matrix::Identity(dim, dim);
  apply_circuit(m, c);
  return m;
}

/// ceil((4^n - 3n - 1) / 4).
inline std::uint64_t cnot_lower_bound(int n) {
  if (n < 1 || n > 31) {
    throw Error(ErrorCode::InvalidArgument, "cnot_lower_bound: n out of range");
  }
  std::uint64_t four_n = std::uint64_t{1} << (2 * n);
  std::uint64_t num = four_n - 3 * static_cast<std::uint64_t>(n) - 1;
  return (num + 3) / 4;
}

// ---------------------------------------------------------------------------
// Reports

enum class Method { QRD, QSD, NONE };

constexpr std::string_view to_string(Method m) {
  switch (m) {
    case Method::QRD: return "qrd";
    case Method::QSD: return "qsd";
    case Method::NONE: return "none";
  }
  return "?";
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct CompileReport {
  int n_qubits = 0;
  GateCounts counts;
  double distance = 0;
  std::uint64_t lower_bound = 0;
  double wall_time = 0;
  Method method = Method::NONE;
  bool retargeted = false;
  std::uint64_t seed = 0;
  double tol = 0;
  bool passed = false;

  static constexpr const char* kCsvHeader =
      "method,n,seed,cnot_or_cz_count,single_qubit_count,c_pulse_count,"
      "lower_bound,distance,wall_time_s";

  std::string csv_row() const {
    std::ostringstream os;
    os << to_string(method) << (retargeted ? "+retarget" : "") << ',' << n_qubits << ',' << seed << ','
       << counts.entangling_total << ',' << counts.single_qubit_total << ','
       << counts.count(GateKind::C) << ',' << lower_bound << ','
       << format_double(distance) << ',' << format_double(wall_time);
    return os.str();
  }

  std::string text() const {
    std::ostringstream os;
    os << "method:        " << to_string(method)
       << (retargeted ? " (retargeted)" : "") << '\n'
       << "qubits:        " << n_qubits << '\n'
       << "entangling:    " << counts.entangling_total << '\n'
       << "single-qubit:  " << counts.single_qubit_total << '\n';
    for (auto [kind, count] : counts.per_kind) {
      os << "  " << to_string(kind) << ": " << count << '\n';
    }
    os << "lower bound:   " << lower_bound << '\n'
       << "distance:      " << format_double(distance) << '\n'
       << "tolerance:     " << format_double(tol) << '\n'
       << "verified:      " << (passed ? "yes" : "no") << '\n'
       << "wall time (s): " << format_double(wall_time) << '\n';
    return os.str();
  }
};

/// Simulates `c` and compares with `target` up to global phase.
inline CompileReport verify(const Circuit& c, const Matrix& target, double tol) {
  require_square(target);
  if (target.rows() != (Eigen::Index{1} << c.n_qubits())) {
    throw Error(ErrorCode::DimMismatch, "verify: circuit width and matrix differ");
  }
  CompileReport r;
  r.n_qubits = c.n_qubits();
  r.counts = gate_counts(c);
  r.distance = phase_distance(circuit_unitary(c), target);
  r.lower_bound = cnot_lower_bound(c.n_qubits());
  r.tol = tol;
  r.passed = r.distance < tol;
  return r;
}

}  // namespace atomqc
