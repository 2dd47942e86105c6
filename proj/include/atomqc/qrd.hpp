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

#include <bit>
#include <cstdint>
#include <vector>

#include "atomqc/barenco.hpp"
#include "atomqc/simulator.hpp"

namespace atomqc {

/// Gray-code basis relabeling: i xor (i >> 1).
constexpr std::uint64_t gcb_code(std::uint64_t i) { return i ^ (i >> 1); }

constexpr std::uint64_t gcb_inverse(std::uint64_t g) {
  std::uint64_t i = g;
  for (std::uint64_t s = g >> 1; s; s >>= 1) i ^= s;
  return i;
}

struct GcbPermutation {
  int n_qubits = 0;
  std::vector<std::uint64_t> codes;

  explicit GcbPermutation(int n) : n_qubits(n) {
    if (n < 0 || n > 30) throw Error(ErrorCode::SizeTooLarge, "gcb width");
    codes.resize(std::size_t{1} << n);
    for (std::size_t i = 0; i < codes.size(); ++i) codes[i] = gcb_code(i);
  }
};

/// One elimination step. `basis_a` is the pivot row and `basis_b` the row
/// whose entry in `eliminated_column` is zeroed; both are original basis
/// indices differing in a single bit. `block` acts on (a, b) in that order.
/// `gate` is the multi-controlled form actually applied, after any control
/// elimination.
struct TwoLevelOp {
  std::size_t basis_a = 0;
  std::size_t basis_b = 0;
  Mat2 block = Mat2::Identity();
  std::size_t eliminated_column = 0;
  Gate gate;
};

struct QrdElimination {
  std::vector<TwoLevelOp> ops;
  std::vector<double> residual_phases;  // indexed by basis state
};

namespace detail {

// Is permuted coordinate (pr, pc) known to be zero while eliminating
// permuted column k at permuted row jp (rows > jp of column k done)?
inline bool cleared(std::size_t pr, std::size_t pc, std::size_t k, std::size_t jp) {
  if (pc < k && pr != pc) return true;
  if (pr < k && pc != pr) return true;
  return pc == k && pr > jp;
}

// Multi-controlled form of a two-level op on Gray-adjacent rows.
inline Gate two_level_gate(std::size_t ri, std::size_t rj, const Mat2& b, int n) {
  const std::size_t diff = ri ^ rj;
  const int tq = n - 1 - std::countr_zero(diff);
  Mat2 m = b;
  if (ri & diff) m << b(1, 1), b(1, 0), b(0, 1), b(0, 0);
  std::vector<int> ctrl;
  std::vector<bool> pols;
  for (int q = 0; q < n; ++q) {
    if (q == tq) continue;
    ctrl.push_back(q);
    pols.push_back((ri >> (n - 1 - q)) & 1);
  }
  if (ctrl.empty()) return Gate::unitary(tq, m);
  return Gate::mcu(std::move(ctrl), std::move(pols), tq, m);
}

// Whether every row pair the gate couples leaves the cleared set intact.
inline bool preserves_cleared(
    const Gate& g, int n, std::size_t k, std::size_t jp) {
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t tb = qubit_bit(g.target(), n);
  std::size_t mask = 0, value = 0;
  for (std::size_t c = 0; c + 1 < g.qubits.size(); ++c) {
    std::size_t b = qubit_bit(g.qubits[c], n);
    mask |= b;
    if (g.polarities[c]) value |= b;
  }
  for (std::size_t x = 0; x < dim; ++x) {
    if ((x & tb) || (x & mask) != value) continue;
    const std::size_t px = gcb_inverse(x), py = gcb_inverse(x | tb);
    if (std::min(px, py) + 1 == jp && std::max(px, py) == jp) continue;
    for (std::size_t pc = 0; pc < dim; ++pc) {
      if (cleared(px, pc, k, jp) != cleared(py, pc, k, jp)) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Drops controls of a two-level gate, most significant qubit first, as long
/// as the wider action still keeps every cleared coordinate at zero.
inline Gate eliminate_controls(Gate g, int n, std::size_t k, std::size_t jp) {
  if (g.kind != GateKind::MCU) return g;
  std::size_t idx = 0;
  while (idx + 1 < g.qubits.size()) {
    Gate trial = g;
    trial.qubits.erase(trial.qubits.begin() + static_cast<long>(idx));
    trial.polarities.erase(trial.polarities.begin() + static_cast<long>(idx));
    if (detail::preserves_cleared(trial, n, k, jp)) {
      g = std::move(trial);
    } else {
      ++idx;
    }
  }
  if (g.qubits.size() == 1) return Gate::unitary(g.qubits[0], g.matrix);
  return g;
}

/// Bottom-up, left-to-right Givens elimination in the Gray-code basis.
inline QrdElimination qrd_eliminate(
    const Matrix& u, const Tolerances& tol = {}, bool reduce_controls = true) {
  require_unitary(u, tol.tol_unitary);
  const int n = qubit_count(static_cast<std::size_t>(u.rows()));
  const std::size_t dim = std::size_t{1} << n;
  QrdElimination out;
  Matrix w = u;
  for (std::size_t k = 0; k + 1 < dim; ++k) {
    const std::size_t col = gcb_code(k);
    for (std::size_t jp = dim - 1; jp > k; --jp) {
      const std::size_t rj = gcb_code(jp), ri = gcb_code(jp - 1);
      if (std::abs(w(rj, col)) < tol.tol_zero) continue;
      GivensRotation gr = givens_params(w, rj, ri, col, tol);
      TwoLevelOp op;
      op.basis_a = ri;
      op.basis_b = rj;
      op.block = gr.block();
      op.eliminated_column = col;
      op.gate = detail::two_level_gate(ri, rj, op.block, n);
      if (reduce_controls) op.gate = eliminate_controls(op.gate, n, k, jp);
      apply_gate(w, op.gate, n);
      w(rj, col) = 0;
      out.ops.push_back(std::move(op));
    }
  }
  out.residual_phases.resize(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    out.residual_phases[x] = std::arg(w(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)));
  }
  return out;
}

struct QrdOptions {
  bool eliminate_controls = true;
  bool lower = true;
  LoweringOptions lowering;
  Tolerances tol;
  int max_qubits = 8;
};

/// Circuit for U: the residual diagonal first, then the inverse two-level
/// ops in reverse elimination order.
inline Circuit qrd_compile(const Matrix& u, const QrdOptions& opts = {}) {
  opts.tol.validate();
  require_square(u);
  const int n = qubit_count(static_cast<std::size_t>(u.rows()));
  if (n < 1 || n > std::min(opts.max_qubits, kMaxSimQubits)) {
    throw Error(
        ErrorCode::SizeTooLarge,
        std::to_string(n) + " qubits exceeds the limit of " +
            std::to_string(std::min(opts.max_qubits, kMaxSimQubits)));
  }
  QrdElimination el = qrd_eliminate(u, opts.tol, opts.eliminate_controls);

  Circuit c(n);
  const double ref = el.residual_phases[0];
  c.set_phase(ref);
  for (std::size_t x = 0; x < el.residual_phases.size(); ++x) {
    double d = wrap_pi(el.residual_phases[x] - ref);
    if (std::abs(d) < opts.tol.tol_zero) continue;
    std::vector<int> qs;
    std::vector<bool> pattern;
    for (int q = 0; q < n; ++q) {
      qs.push_back(q);
      pattern.push_back((x >> (n - 1 - q)) & 1);
    }
    c.append(Gate::diag_phase(std::move(qs), std::move(pattern), d), opts.tol);
  }
  for (auto it = el.ops.rbegin(); it != el.ops.rend(); ++it) {
    Gate g = it->gate;
    g.matrix = Mat2(g.matrix.adjoint());
    if (g.kind == GateKind::MCU && g.qubits.size() == 2 && g.polarities[0]) {
      g = Gate::cu(g.qubits[0], g.qubits[1], g.matrix);
    }
    c.append(std::move(g), opts.tol);
  }
  if (!opts.lower) return c;
  return lower_circuit(c, opts.lowering, opts.tol);
}

}  // namespace atomqc
