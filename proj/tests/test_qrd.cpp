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

#include <gtest/gtest.h>

#include <algorithm>
#include <bit>

#include "atomqc/qrd.hpp"

using namespace atomqc;

namespace {

std::size_t total_controls(const QrdElimination& el) {
  std::size_t s = 0;
  for (const auto& op : el.ops) s += op.gate.num_controls();
  return s;
}

}  // namespace

TEST(Gcb, Examples) {
  EXPECT_EQ(gcb_code(0), 0u);
  EXPECT_EQ(gcb_code(2), 3u);
  EXPECT_EQ(gcb_code(3), 2u);
}

TEST(Gcb, GrayPermutationUpToTwelveQubits) {
  for (int n = 0; n <= 12; ++n) {
    GcbPermutation p(n);
    std::vector<bool> hit(p.codes.size(), false);
    for (std::size_t i = 0; i < p.codes.size(); ++i) {
      ASSERT_LT(p.codes[i], p.codes.size());
      EXPECT_FALSE(hit[p.codes[i]]);
      hit[p.codes[i]] = true;
      EXPECT_EQ(gcb_inverse(p.codes[i]), i);
      if (i + 1 < p.codes.size()) {
        EXPECT_EQ(std::popcount(p.codes[i] ^ p.codes[i + 1]), 1);
      }
    }
  }
}

TEST(QrdEliminate, IdentityAndDiagonal) {
  auto id = qrd_eliminate(Matrix::Identity(8, 8));
  EXPECT_TRUE(id.ops.empty());
  for (double p : id.residual_phases) EXPECT_EQ(p, 0);

  Matrix d = Matrix::Identity(2, 2);
  d(1, 1) = std::polar(1.0, kPi / 3);
  auto r = qrd_eliminate(d);
  EXPECT_TRUE(r.ops.empty());
  EXPECT_NEAR(r.residual_phases[0], 0, 1e-15);
  EXPECT_NEAR(r.residual_phases[1], kPi / 3, 1e-15);
}

TEST(QrdEliminate, OpsDiagonalizeAndCoupleGrayNeighbours) {
  for (int n = 1; n <= 5; ++n) {
    for (bool reduce : {false, true}) {
      Matrix u = random_unitary(n, 17 * n);
      auto el = qrd_eliminate(u, {}, reduce);
      const std::size_t dim = std::size_t{1} << n;
      EXPECT_LE(el.ops.size(), dim * (dim - 1) / 2);
      Matrix w = u;
      for (const auto& op : el.ops) {
        EXPECT_EQ(std::popcount(op.basis_a ^ op.basis_b), 1);
        EXPECT_EQ(
            std::abs(static_cast<long>(gcb_inverse(op.basis_a)) -
                     static_cast<long>(gcb_inverse(op.basis_b))),
            1);
        w = gate_matrix(op.gate, n) * w;
      }
      Matrix expect = Matrix::Zero(dim, dim);
      for (std::size_t x = 0; x < dim; ++x) {
        expect(x, x) = std::polar(1.0, el.residual_phases[x]);
      }
      EXPECT_LT((w - expect).cwiseAbs().maxCoeff(), 1e-10) << n;
    }
  }
}

TEST(QrdEliminate, FourByFourOpCount) {
  auto el = qrd_eliminate(random_unitary(2, 3));
  EXPECT_LE(el.ops.size(), 6u);
}

TEST(ControlElimination, FirstOpLosesAllControls) {
  for (int n = 2; n <= 5; ++n) {
    auto el = qrd_eliminate(random_unitary(n, 50 + n));
    ASSERT_FALSE(el.ops.empty());
    EXPECT_EQ(el.ops.front().gate.kind, GateKind::U);
    EXPECT_EQ(el.ops.front().gate.num_controls(), 0u);
  }
}

TEST(ControlElimination, LastTwoQubitOpKeepsAtMostOneControl) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    auto el = qrd_eliminate(random_unitary(2, 700 + s));
    ASSERT_FALSE(el.ops.empty());
    EXPECT_LE(el.ops.back().gate.num_controls(), 1u);
  }
}

TEST(ControlElimination, NeverIncreasesControls) {
  for (int n = 2; n <= 5; ++n) {
    Matrix u = random_unitary(n, 80 + n);
    auto full = qrd_eliminate(u, {}, false);
    auto reduced = qrd_eliminate(u, {}, true);
    EXPECT_EQ(full.ops.size(), reduced.ops.size());
    for (const auto& op : full.ops) {
      EXPECT_EQ(op.gate.num_controls(), static_cast<std::size_t>(n - 1));
    }
    for (std::size_t i = 0; i < reduced.ops.size(); ++i) {
      EXPECT_LE(reduced.ops[i].gate.num_controls(), full.ops[i].gate.num_controls());
    }
    EXPECT_LT(total_controls(reduced), total_controls(full));
  }
}

TEST(ControlElimination, RejectsDropThatTouchesFinishedRows) {
  // Elimination of permuted column 1: dropping every control would mix
  // finished row 0 with an open row.
  const int n = 2;
  Mat2 b = random_unitary(1, 1);
  Gate g = detail::two_level_gate(gcb_code(2), gcb_code(3), b, n);
  Gate r = eliminate_controls(g, n, 1, 3);
  EXPECT_EQ(r.num_controls(), 1u);
  EXPECT_TRUE(detail::preserves_cleared(r, n, 1, 3));
}

TEST(QrdCompile, IdentityIsEmpty) {
  for (int n = 1; n <= 4; ++n) {
    Circuit c = qrd_compile(Matrix::Identity(1 << n, 1 << n));
    EXPECT_TRUE(c.empty());
    EXPECT_EQ(c.n_qubits(), n);
  }
}

TEST(QrdCompile, Cnot) {
  Matrix cnot = gate_matrix(Gate::cnot(0, 1), 2);
  Circuit c = qrd_compile(cnot);
  EXPECT_LT(phase_distance(circuit_unitary(c), cnot), 1e-10);
}

TEST(QrdCompile, HaarEightByEightSeedSeven) {
  Matrix u = random_unitary(3, 7);
  Circuit c = qrd_compile(u);
  EXPECT_LT(phase_distance(circuit_unitary(c), u), 1e-8);
  EXPECT_GT(gate_counts(c).entangling_total, 0u);
}

TEST(QrdCompile, RoundTripAllModes) {
  for (int n = 1; n <= 5; ++n) {
    Matrix u = random_unitary(n, 300 + n);
    for (bool reduce : {false, true}) {
      for (bool lower : {false, true}) {
        QrdOptions o;
        o.eliminate_controls = reduce;
        o.lower = lower;
        Circuit c = qrd_compile(u, o);
        EXPECT_LT(phase_distance(circuit_unitary(c), u), 1e-8)
            << n << " reduce=" << reduce << " lower=" << lower;
        if (lower) {
          for (const auto& g : c.gates()) {
            bool ok = g.is_single_qubit() || g.kind == GateKind::CNOT ||
                      (g.kind == GateKind::MCX && g.qubits.size() == 3);
            EXPECT_TRUE(ok) << to_string(g.kind);
          }
        }
      }
    }
  }
}

TEST(QrdCompile, EliminationReducesLoweredCount) {
  for (int n = 2; n <= 4; ++n) {
    Matrix u = random_unitary(n, 400 + n);
    QrdOptions on, off;
    off.eliminate_controls = false;
    auto c_on = gate_counts(qrd_compile(u, on)).entangling_total;
    auto c_off = gate_counts(qrd_compile(u, off)).entangling_total;
    EXPECT_LE(c_on, c_off) << n;
  }
}

TEST(QrdCompile, StructuredInputs) {
  // Permutation and diagonal matrices hit the skip paths.
  Matrix perm = Matrix::Zero(8, 8);
  const int image[8] = {3, 6, 0, 7, 1, 2, 5, 4};
  for (int c = 0; c < 8; ++c) perm(image[c], c) = 1;
  Matrix diag = Matrix::Zero(8, 8);
  for (int k = 0; k < 8; ++k) diag(k, k) = std::polar(1.0, 0.3 * k * k);
  Matrix toffoli = gate_matrix(Gate::toffoli(0, 1, 2), 3);
  for (const Matrix& u : {perm, diag, toffoli}) {
    Circuit c = qrd_compile(u);
    EXPECT_LT(phase_distance(circuit_unitary(c), u), 1e-9);
  }
}

TEST(QrdCompile, Errors) {
  QrdOptions o;
  o.max_qubits = 2;
  try {
    qrd_compile(Matrix::Identity(8, 8), o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SizeTooLarge);
  }
  try {
    qrd_compile(Matrix::Identity(6, 6));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPowerOfTwo);
  }
  Matrix bad = Matrix::Identity(4, 4);
  bad(0, 0) = 2;
  try {
    qrd_compile(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnitary);
  }
}
