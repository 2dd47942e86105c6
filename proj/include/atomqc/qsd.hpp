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
#include <functional>
#include <vector>

#include "atomqc/barenco.hpp"

namespace atomqc {

/// Uniformly controlled rotation: RY or RZ by thetas[b] on the target when
/// the controls read pattern b (controls[0] is the most significant bit).
struct MultiplexedRotation {
  GateKind axis = GateKind::RZ;
  std::vector<int> controls;
  int target = 0;
  std::vector<double> thetas;
};

namespace detail {

inline std::size_t log2_length(std::size_t len) {
  if (!is_power_of_two(len)) {
    throw Error(
        ErrorCode::LengthNotPowerOfTwo,
        "angle vector length " + std::to_string(len) + " is not a power of two");
  }
  return static_cast<std::size_t>(std::countr_zero(len));
}

inline double gray_sign(std::size_t b, std::size_t g) {
  return (std::popcount(b & (g ^ (g >> 1))) & 1) ? -1.0 : 1.0;
}

}  // namespace detail

/// Angles for the rotation/CNOT ladder: alpha = 2^-k M^T theta with
/// M[b][g] = (-1)^{popcount(b & gray(g))}.
inline std::vector<double> multiplexer_angles(const std::vector<double>& thetas) {
  const std::size_t k = detail::log2_length(thetas.size());
  const std::size_t len = thetas.size();
  std::vector<double> alpha(len, 0.0);
  for (std::size_t g = 0; g < len; ++g) {
    double s = 0;
    for (std::size_t b = 0; b < len; ++b) s += detail::gray_sign(b, g) * thetas[b];
    alpha[g] = s / static_cast<double>(std::size_t{1} << k);
  }
  return alpha;
}

/// theta = M alpha.
inline std::vector<double> multiplexer_angles_inverse(const std::vector<double>& alpha) {
  detail::log2_length(alpha.size());
  const std::size_t len = alpha.size();
  std::vector<double> theta(len, 0.0);
  for (std::size_t b = 0; b < len; ++b) {
    for (std::size_t g = 0; g < len; ++g) theta[b] += detail::gray_sign(b, g) * alpha[g];
  }
  return theta;
}

/// R(alpha_g) then CNOT from the control whose bit flips between gray(g) and
/// gray(g + 1), cyclically. 2^k rotations and 2^k CNOTs for k >= 1.
inline Circuit synth_multiplexed_rotation(const MultiplexedRotation& m, int width) {
  if (m.axis != GateKind::RY && m.axis != GateKind::RZ) {
    throw Error(ErrorCode::InvalidArgument, "multiplexed rotation axis must be RY or RZ");
  }
  const std::size_t k = detail::log2_length(m.thetas.size());
  if (k != m.controls.size()) {
    throw Error(ErrorCode::DimMismatch, "need 2^k angles for k controls");
  }
  Circuit out(width);
  auto rot = [&](double a) {
    Gate g;
    g.kind = m.axis;
    g.qubits = {m.target};
    g.theta = a;
    out.append(g);
  };
  if (k == 0) {
    rot(m.thetas[0]);
    return out;
  }
  const std::vector<double> alpha = multiplexer_angles(m.thetas);
  const std::size_t len = alpha.size();
  for (std::size_t g = 0; g < len; ++g) {
    rot(alpha[g]);
    std::size_t next = (g + 1) % len;
    std::size_t change = (g ^ (g >> 1)) ^ (next ^ (next >> 1));
    auto bit = static_cast<std::size_t>(std::countr_zero(change));
    out.append(Gate::cnot(m.controls[k - 1 - bit], m.target));
  }
  return out;
}

/// Optional replacement for the recursion on small blocks. Returning true
/// means the hook appended a circuit for `u` on `qubits` (qubits[0] most
/// significant) to `out`.
using QsdBaseCase =
    std::function<bool(const Matrix& u, const std::vector<int>& qubits, Circuit& out)>;

struct QsdOptions {
  Tolerances tol;
  int max_qubits = 8;
  QsdBaseCase base_case;
};

namespace detail {

inline void qsd_emit_single(Circuit& out, const Mat2& u, int q, const Tolerances& tol) {
  ZyAngles z = zy_decompose(u, tol);
  emit_rotation(out, GateKind::RZ, q, z.delta, tol);
  emit_rotation(out, GateKind::RY, q, z.gamma, tol);
  emit_rotation(out, GateKind::RZ, q, z.beta, tol);
  out.add_phase(z.alpha);
}

inline void qsd_emit_demux(
    Circuit& out, const Matrix& a, const Matrix& b, const std::vector<int>& qubits,
    const QsdOptions& opts);

inline void qsd_recurse(
    Circuit& out, const Matrix& u, const std::vector<int>& qubits,
    const QsdOptions& opts) {
  if (opts.base_case && opts.base_case(u, qubits, out)) return;
  if (qubits.size() == 1) {
    qsd_emit_single(out, u, qubits[0], opts.tol);
    return;
  }
  const Eigen::Index p = u.rows() / 2;
  CsdResult cs = cs_decompose(u, opts.tol);
  std::vector<int> lower(qubits.begin() + 1, qubits.end());

  // Right factor diag(a2, b2) acts first.
  qsd_emit_demux(out, cs.a2, cs.b2, qubits, opts);
  MultiplexedRotation ry{GateKind::RY, lower, qubits[0], {}};
  ry.thetas.resize(static_cast<std::size_t>(p));
  for (Eigen::Index t = 0; t < p; ++t) ry.thetas[t] = 2 * cs.thetas[t];
  out.append(synth_multiplexed_rotation(ry, out.n_qubits()));
  qsd_emit_demux(out, cs.a1, cs.b1, qubits, opts);
}

// diag(a, b) = (I x V)(D + D^dag)(I x W): W first, multiplexed RZ, then V.
inline void qsd_emit_demux(
    Circuit& out, const Matrix& a, const Matrix& b, const std::vector<int>& qubits,
    const QsdOptions& opts) {
  DemuxResult dm = demultiplex(a, b, opts.tol);
  std::vector<int> lower(qubits.begin() + 1, qubits.end());
  qsd_recurse(out, dm.w, lower, opts);
  MultiplexedRotation rz{GateKind::RZ, lower, qubits[0], {}};
  for (double d : dm.d_phases) rz.thetas.push_back(-2 * d);
  out.append(synth_multiplexed_rotation(rz, out.n_qubits()));
  qsd_recurse(out, dm.v, lower, opts);
}

}  // namespace detail

/// Quantum Shannon decomposition into RY, RZ and CNOT. A unitary that is a
/// global phase times the identity compiles to an empty circuit.
inline Circuit qsd_compile(const Matrix& u, const QsdOptions& opts = {}) {
  opts.tol.validate();
  require_square(u);
  const int n = qubit_count(static_cast<std::size_t>(u.rows()));
  if (n < 1 || n > std::min(opts.max_qubits, kMaxSimQubits)) {
    throw Error(
        ErrorCode::SizeTooLarge,
        std::to_string(n) + " qubits exceeds the limit of " +
            std::to_string(std::min(opts.max_qubits, kMaxSimQubits)));
  }
  require_unitary(u, opts.tol.tol_unitary);
  Circuit out(n);
  const Matrix id = Matrix::Identity(u.rows(), u.cols());
  if (phase_distance(u, id) < opts.tol.tol_zero) {
    out.set_phase(std::arg(u.trace()));
    return out;
  }
  std::vector<int> qubits(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) qubits[static_cast<std::size_t>(q)] = q;
  detail::qsd_recurse(out, u, qubits, opts);
  return out;
}

/// CNOT count of the plain recursion: c_1 = 0, c_n = 4 c_{n-1} + 3 * 2^{n-1}.
inline std::uint64_t qsd_cnot_count(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  std::uint64_t c = 0;
  for (int k = 2; k <= n; ++k) c = 4 * c + 3 * (std::uint64_t{1} << (k - 1));
  return c;
}

}  // namespace atomqc
