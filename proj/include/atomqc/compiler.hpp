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

#include <chrono>
#include <vector>

#include "atomqc/qrd.hpp"
#include "atomqc/qsd.hpp"
#include "atomqc/retarget.hpp"

namespace atomqc {

struct CompileOptions {
  Method method = Method::QSD;
  bool retarget = false;
  int max_qubits = 8;
  std::uint64_t seed = 0;  // recorded in the report
  Tolerances tol;
  double verify_tol = 1e-7;
  bool verify = true;

  void validate() const {
    tol.validate();
    if (method == Method::NONE) {
      throw Error(ErrorCode::InvalidArgument, "compile needs method qrd or qsd");
    }
    if (max_qubits < 1 || max_qubits > kMaxSimQubits) {
      throw Error(
          ErrorCode::InvalidArgument,
          "max_qubits must lie in [1, " + std::to_string(kMaxSimQubits) + "]");
    }
    if (!(verify_tol > 0)) throw Error(ErrorCode::InvalidArgument, "verify_tol must be positive");
  }
};

struct CompileResult {
  Circuit circuit;
  CompileReport report;
};

/// Decomposes `u`, optionally retargets, and verifies by simulation. The
/// wall time covers decomposition and retargeting, not verification.
inline CompileResult compile(const Matrix& u, const CompileOptions& opts = {}) {
  opts.validate();
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  Circuit c;
  if (opts.method == Method::QRD) {
    QrdOptions q;
    q.tol = opts.tol;
    q.max_qubits = opts.max_qubits;
    c = qrd_compile(u, q);
  } else {
    QsdOptions q;
    q.tol = opts.tol;
    q.max_qubits = opts.max_qubits;
    c = qsd_compile(u, q);
  }
  if (opts.retarget) {
    RetargetOptions r;
    r.tol = opts.tol;
    c = retarget_circuit(c, r);
  }
  const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();

  CompileReport rep;
  if (opts.verify) {
    rep = verify(c, u, opts.verify_tol);
  } else {
    rep.n_qubits = c.n_qubits();
    rep.counts = gate_counts(c);
    rep.lower_bound = cnot_lower_bound(c.n_qubits());
    rep.tol = opts.verify_tol;
  }
  rep.wall_time = elapsed;
  rep.method = opts.method;
  rep.retargeted = opts.retarget;
  rep.seed = opts.seed;
  return {std::move(c), rep};
}

struct BenchOptions {
  int n_min = 1;
  int n_max = 4;
  int samples = 5;
  std::vector<Method> methods{Method::QSD};
  bool retarget = true;
  std::uint64_t seed = 0;
  CompileOptions compile;

  void validate() const {
    if (n_min < 1 || n_max < n_min || n_max > compile.max_qubits) {
      throw Error(
          ErrorCode::InvalidArgument,
          "need 1 <= n_min <= n_max <= " + std::to_string(compile.max_qubits));
    }
    if (samples < 1) throw Error(ErrorCode::InvalidArgument, "samples must be >= 1");
    if (methods.empty()) throw Error(ErrorCode::InvalidArgument, "no methods given");
  }
};

/// Seed of sample `s` at width `n`; shared across methods so every method
/// sees the same matrices.
inline std::uint64_t bench_seed(std::uint64_t base, int n, int s) {
  return base + 1000 * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(s);
}

/// One report per (method, n, sample), ordered by method, then n, then sample.
inline std::vector<CompileReport> bench(const BenchOptions& opts) {
  opts.validate();
  std::vector<CompileReport> rows;
  for (Method m : opts.methods) {
    for (int n = opts.n_min; n <= opts.n_max; ++n) {
      for (int s = 0; s < opts.samples; ++s) {
        CompileOptions co = opts.compile;
        co.method = m;
        co.retarget = opts.retarget;
        co.seed = bench_seed(opts.seed, n, s);
        rows.push_back(compile(random_unitary(n, co.seed), co).report);
      }
    }
  }
  return rows;
}

inline std::string bench_csv(const std::vector<CompileReport>& rows) {
  std::string out = std::string(CompileReport::kCsvHeader) + "\n";
  for (const auto& r : rows) out += r.csv_row() + "\n";
  return out;
}

}  // namespace atomqc
