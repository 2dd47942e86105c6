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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "atomqc/atomqc.hpp"
#include "fuzz.hpp"

using namespace atomqc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return v.empty() ? 0 : s / static_cast<double>(v.size());
}

// Per-run reports shared by criteria 1-3.
struct Sweep {
  // [method][n] -> reports
  std::map<Method, std::map<int, std::vector<CompileReport>>> plain, retargeted;
};

const Sweep& sweep() {
  static const Sweep s = [] {
    Sweep out;
    for (bool retarget : {false, true}) {
      BenchOptions b;
      b.n_min = 1;
      b.n_max = 6;
      b.samples = 20;
      b.methods = {Method::QRD, Method::QSD};
      b.retarget = retarget;
      b.seed = 1;
      b.compile.verify_tol = retarget ? 1e-6 : 1e-7;
      for (const CompileReport& r : bench(b)) {
        (retarget ? out.retargeted : out.plain)[r.method][r.n_qubits].push_back(r);
      }
    }
    return out;
  }();
  return s;
}

Outcome criterion1() {
  double worst_plain = 0, worst_rt = 0;
  std::size_t runs = 0;
  for (const auto& [m, by_n] : sweep().plain) {
    for (const auto& [n, rows] : by_n) {
      for (const auto& r : rows) worst_plain = std::max(worst_plain, r.distance), ++runs;
    }
  }
  for (const auto& [m, by_n] : sweep().retargeted) {
    for (const auto& [n, rows] : by_n) {
      for (const auto& r : rows) worst_rt = std::max(worst_rt, r.distance), ++runs;
    }
  }
  bool ok = runs == 2 * 2 * 6 * 20 && worst_plain < 1e-7 && worst_rt < 1e-6;
  return {ok, std::to_string(runs) + " runs, max distance " + fmt("%.3g", worst_plain) +
                  " (< 1e-7), retargeted " + fmt("%.3g", worst_rt) + " (< 1e-6)"};
}

Outcome criterion2() {
  bool ok = true;
  std::string counts;
  for (const auto& [n, rows] : sweep().plain.at(Method::QSD)) {
    const std::uint64_t expect = qsd_cnot_count(n);
    const std::uint64_t lb = cnot_lower_bound(n);
    for (const auto& r : rows) {
      const std::uint64_t c = r.counts.entangling_total;
      if (c != expect || c < lb || (n >= 2 && c <= lb)) ok = false;
    }
    counts += (counts.empty() ? "" : ",") + std::to_string(rows.front().counts.entangling_total);
  }
  for (int n = 7; n <= 12; ++n) {
    if (qsd_cnot_count(n) <= cnot_lower_bound(n)) ok = false;
  }
  return {ok, "QSD CNOTs n=1..6: " + counts + " (recurrence exact, above lower bound)"};
}

Outcome criterion3() {
  bool ok = true;
  std::string detail;
  auto mean_count = [](const std::vector<CompileReport>& rows) {
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(static_cast<double>(r.counts.entangling_total));
    return mean(v);
  };
  for (int n = 3; n <= 6; ++n) {
    double qsd = mean_count(sweep().plain.at(Method::QSD).at(n));
    double qrd = mean_count(sweep().plain.at(Method::QRD).at(n));
    if (!(qsd < qrd)) ok = false;
    detail += "n=" + std::to_string(n) + " " + fmt("%.0f", qsd) + "<" + fmt("%.0f", qrd) + " ";
  }
  // Growth shape from the bench CSV: strictly increasing, at least doubling.
  for (Method m : {Method::QRD, Method::QSD}) {
    std::vector<CompileReport> rows;
    for (const auto& [n, r] : sweep().plain.at(m)) rows.insert(rows.end(), r.begin(), r.end());
    std::istringstream csv(bench_csv(rows));
    std::string line;
    std::getline(csv, line);
    std::map<int, std::vector<double>> by_n;
    while (std::getline(csv, line)) {
      std::stringstream ls(line);
      std::string method, n, seed, count;
      std::getline(ls, method, ',');
      std::getline(ls, n, ',');
      std::getline(ls, seed, ',');
      std::getline(ls, count, ',');
      by_n[std::stoi(n)].push_back(std::stod(count));
    }
    for (int n = 3; n <= 6; ++n) {
      if (!(mean(by_n[n]) >= 2 * mean(by_n[n - 1]))) ok = false;
    }
  }
  return {ok, detail + "(mean entanglers, QSD<QRD; both grow >= 2x per qubit)"};
}

Outcome criterion4() {
  bool ok = true;
  std::size_t circuits = 0, runs = 0;
  auto check = [&](const Circuit& in) {
    Circuit out = retarget_circuit(in);
    auto a = gate_counts(in), b = gate_counts(out);
    ++circuits;
    if (!is_native(out)) ok = false;
    if (b.count(GateKind::CZ) != a.count(GateKind::CNOT) + a.count(GateKind::CZ)) ok = false;
    if (b.count(GateKind::CCZ) != a.count(GateKind::MCX) + a.count(GateKind::CCZ)) ok = false;
    for (const auto& run : collect_single_qubit_runs(out)) {
      ++runs;
      if (run.gate_indices.size() > 2) ok = false;
    }
    if (in.n_qubits() <= 5 &&
        phase_distance(circuit_unitary(out), circuit_unitary(in)) > 1e-8) {
      ok = false;
    }
  };
  for (int n = 1; n <= 5; ++n) {
    for (std::uint64_t s = 0; s < 5; ++s) {
      Matrix u = random_unitary(n, 4000 + 10 * n + s);
      check(qsd_compile(u));
      Circuit q = qrd_compile(u);
      check(q);
    }
  }
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ang(-4, 4);
  for (int t = 0; t < 200; ++t) {
    Circuit c(4);
    for (int g = 0; g < 40; ++g) {
      std::vector<int> qs = {0, 1, 2, 3};
      std::shuffle(qs.begin(), qs.end(), rng);
      switch (rng() % 6) {
        case 0: c.append(Gate::unitary(qs[0], random_unitary(1, rng()))); break;
        case 1: c.append(Gate::rz(qs[0], ang(rng))); break;
        case 2: c.append(Gate::cnot(qs[0], qs[1])); break;
        case 3: c.append(Gate::toffoli(qs[0], qs[1], qs[2])); break;
        case 4: c.append(Gate::cz(qs[0], qs[1])); break;
        default: c.append(Gate::h(qs[0])); break;
      }
    }
    check(c);
  }
  return {ok, std::to_string(circuits) + " circuits, " + std::to_string(runs) +
                  " runs; gate set, 1:1 entangler map and <= 2 C per run"};
}

Outcome criterion5() {
  double worst = 0;
  std::size_t failures = 0, samples = 0;
  auto probe = [&](const Mat2& u) {
    ++samples;
    try {
      worst = std::max(worst, phase_distance(Matrix(two_pulse_synthesis(u).matrix()), Matrix(u)));
    } catch (const Error&) {
      ++failures;
    }
  };
  for (std::uint64_t s = 0; s < 10000; ++s) probe(random_unitary(1, 500000 + s));
  for (int k = 0; k < 334; ++k) {
    double a = 2 * kPi * k / 333;
    probe(rz_matrix(a));
    probe(rx_matrix(a));
    probe(ry_matrix(a));
  }
  for (double a : {1e-15, 1e-9, kPi - 1e-9, kPi + 1e-9, 2 * kPi - 1e-9, 2 * kPi - 1e-15}) {
    probe(rz_matrix(a));
    probe(rx_matrix(a));
    probe(ry_matrix(a));
  }
  bool ok = failures == 0 && worst < 1e-9;
  return {ok, std::to_string(samples) + " unitaries, max error " + fmt("%.3g", worst) +
                  " (< 1e-9), " + std::to_string(failures) + " synthesis failures"};
}

Outcome criterion6() {
  bool ok = true;
  for (int n = 1; n <= 12; ++n) {
    GcbPermutation p(n);
    std::vector<bool> seen(p.codes.size(), false);
    for (std::size_t i = 0; i < p.codes.size(); ++i) {
      std::uint64_t c = p.codes[i];
      if (c >= p.codes.size() || seen[c] || gcb_inverse(c) != i) ok = false;
      if (c < seen.size()) seen[c] = true;
      std::uint64_t next = p.codes[(i + 1) % p.codes.size()];
      if (p.codes.size() > 1 && std::popcount(c ^ next) != 1) ok = false;
    }
  }
  std::string detail;
  for (int n = 1; n <= 7; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t bound = dim * (dim - 1) / 2;
    std::size_t most = 0;
    for (std::uint64_t s = 0; s < (n <= 5 ? 5u : 2u); ++s) {
      most = std::max(most, qrd_eliminate(random_unitary(n, 7000 + 10 * n + s)).ops.size());
    }
    if (most > bound) ok = false;
    detail += std::to_string(most) + "/" + std::to_string(bound) + " ";
  }
  return {ok, "Gray permutation n<=12; two-level ops/bound n=1..7: " + detail};
}

Outcome criterion7() {
  bool ok = true;
  double worst = 0;
  std::size_t fragments = 0;
  std::mt19937_64 rng(7);
  auto record = [&](const Circuit& frag, const Gate& ideal, int width) {
    ++fragments;
    double d = phase_distance(circuit_unitary(frag), gate_matrix(ideal, width));
    worst = std::max(worst, d);
    if (!(d < 1e-8)) ok = false;
  };
  for (int width = 2; width <= 6; ++width) {
    for (int m = 1; m <= std::min(4, width - 1); ++m) {
      for (int trial = 0; trial < 4; ++trial) {
        std::vector<int> qs(static_cast<std::size_t>(width));
        for (int q = 0; q < width; ++q) qs[static_cast<std::size_t>(q)] = q;
        std::shuffle(qs.begin(), qs.end(), rng);
        std::vector<int> ctrl(qs.begin(), qs.begin() + m);
        const int target = qs[static_cast<std::size_t>(m)];
        std::vector<bool> pols;
        for (int k = 0; k < m; ++k) pols.push_back(rng() & 1);
        Mat2 u = random_unitary(1, rng());
        if (m == 1) record(lower_cu(ctrl[0], target, u, width), Gate::cu(ctrl[0], target, u), width);
        record(lower_mcu(ctrl, pols, target, u, width), Gate::mcu(ctrl, pols, target, u), width);
        record(lower_mcx(ctrl, pols, target, width), Gate::mcx(ctrl, pols, target), width);
        std::vector<int> idle(qs.begin() + m + 1, qs.end());
        if (m >= 3 && static_cast<int>(idle.size()) >= m - 2) {
          Circuit ladder = lower_mcx_ladder(ctrl, target, idle, width);
          record(ladder, Gate::mcx(ctrl, std::vector<bool>(ctrl.size(), true), target), width);
          // Every basis state maps to one basis state with the idle bits intact.
          Matrix lu = circuit_unitary(ladder);
          for (Eigen::Index col = 0; col < lu.cols(); ++col) {
            Eigen::Index row = 0;
            lu.col(col).cwiseAbs().maxCoeff(&row);
            if (std::abs(std::abs(lu(row, col)) - 1) > 1e-9) ok = false;
            for (int q : idle) {
              const Eigen::Index bit = Eigen::Index{1} << (width - 1 - q);
              if ((row & bit) != (col & bit)) ok = false;
            }
          }
        }
      }
    }
  }
  return {ok, std::to_string(fragments) + " fragments, max distance " + fmt("%.3g", worst) +
                  " (< 1e-8); ladder idle qubits invariant"};
}

Outcome criterion8() {
  BenchOptions b;
  b.n_min = 2;
  b.n_max = 7;
  b.samples = 3;
  b.methods = {Method::QSD};
  b.retarget = true;
  b.seed = 8;
  std::map<int, std::vector<double>> times;
  for (const auto& r : bench(b)) times[r.n_qubits].push_back(r.wall_time);
  std::vector<double> xs, ys;
  for (const auto& [n, t] : times) {
    xs.push_back(n);
    ys.push_back(std::log(mean(t)));
  }
  const double mx = mean(xs), my = mean(ys);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  const double r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 0;
  bool ok = r2 > 0.9 && slope > 0;
  return {ok, "log(wall time) vs n for n=2..7: R^2 " + fmt("%.4f", r2) + " (> 0.9), growth x" +
                  fmt("%.2f", std::exp(slope)) + " per qubit"};
}

Outcome criterion9() {
  bool ok = true;
  std::size_t round_trips = 0;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ang(0, 2 * kPi);
  for (int t = 0; t < 5000; ++t) {
    const int n = 3 + t % 4;
    Circuit c(n, ang(rng) - kPi);
    for (int g = 0; g < 30; ++g) {
      std::vector<int> qs(static_cast<std::size_t>(n));
      for (int q = 0; q < n; ++q) qs[static_cast<std::size_t>(q)] = q;
      std::shuffle(qs.begin(), qs.end(), rng);
      switch (rng() % 3) {
        case 0: c.append(Gate::c(qs[0], ang(rng), ang(rng))); break;
        case 1: c.append(Gate::cz(qs[0], qs[1])); break;
        default: c.append(Gate::ccz(qs[0], qs[1], qs[2])); break;
      }
    }
    std::string text = emit_sequence(c);
    if (emit_sequence(parse_sequence(text)) != text) ok = false;
    ++round_trips;
  }
  for (int n = 1; n <= 4; ++n) {
    std::string text = emit_sequence(retarget_circuit(qsd_compile(random_unitary(n, 90 + n))));
    if (emit_sequence(parse_sequence(text)) != text) ok = false;
    ++round_trips;
  }

  std::size_t corpus = 0, mismatches = 0;
  const fs::path dir = fs::path(ATOMQC_TEST_DATA) / "qasm";
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".qasm") continue;
    ++corpus;
    auto slurp = [](const fs::path& p) {
      std::ifstream in(p, std::ios::binary);
      std::stringstream ss;
      ss << in.rdbuf();
      return ss.str();
    };
    fs::path golden = entry.path();
    golden.replace_extension(".expected");
    std::string expected = slurp(golden);
    if (!expected.empty() && expected.back() == '\n') expected.pop_back();
    std::string got;
    try {
      Circuit c = parse_qasm(slurp(entry.path()));
      got = "ok " + std::to_string(c.n_qubits()) + " " + std::to_string(c.size());
    } catch (const ParseError& e) {
      got = std::string("error ") + e.what();
    }
    if (got != expected) ++mismatches;
  }
  if (corpus < 15 || mismatches) ok = false;

  std::size_t crashes = 0;
  std::mt19937_64 frng(99);
  constexpr std::size_t kFuzz = 1000000;
  for (std::size_t i = 0; i < kFuzz; ++i) {
    if (!fuzz::parsers_survive(fuzz::fuzz_input(frng))) ++crashes;
  }
  if (crashes) ok = false;
  return {ok, std::to_string(round_trips) + " byte-exact SEQUENCE round trips; " +
                  std::to_string(corpus) + " corpus files, " + std::to_string(mismatches) +
                  " diagnostic mismatches; " + std::to_string(kFuzz) + " fuzz inputs, " +
                  std::to_string(crashes) + " escapes"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"round-trip exactness", criterion1},
      {"QSD CNOT count law", criterion2},
      {"QSD below QRD, exponential growth", criterion3},
      {"retarget gate-set purity", criterion4},
      {"two-pulse robustness", criterion5},
      {"Gray code and two-level bound", criterion6},
      {"multi-controlled lowering", criterion7},
      {"exponential wall-time trend", criterion8},
      {"I/O bit-exactness and fuzzing", criterion9},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::printf("%s criterion %zu (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
