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

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "atomqc/atomqc.hpp"

namespace atomqc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitBadMatrix = 2;
inline constexpr int kExitVerifyFailed = 3;
inline constexpr int kExitParse = 4;
inline constexpr int kExitUsage = 64;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("error while writing '" + path + "'");
}

/// Safety cap from ATOMQC_MAX_QUBITS, or the default when unset.
inline int max_qubits_from_env(const char* value, int fallback = 8) {
  if (!value || !*value) return fallback;
  char* end = nullptr;
  long v = std::strtol(value, &end, 10);
  if (*end != '\0' || v < 1 || v > kMaxSimQubits) {
    throw UsageError(
        "ATOMQC_MAX_QUBITS must be an integer in [1, " + std::to_string(kMaxSimQubits) +
        "], got '" + std::string(value) + "'");
  }
  return static_cast<int>(v);
}

/// Parses a circuit file, choosing SEQUENCE or QASM from the first word.
inline Circuit parse_circuit(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else {
      break;
    }
  }
  if (text.substr(i).starts_with("SEQUENCE")) return parse_sequence(text);
  return parse_qasm(text);
}

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

inline void emit(const std::string& path, const std::string& text, Streams io) {
  if (path.empty()) {
    io.out << text;
  } else {
    write_file(path, text);
  }
}

inline Matrix load_matrix(const std::string& path, const Tolerances& tol) {
  return read_matrix(read_file(path), tol);
}

struct CompileArgs {
  std::string matrix;
  std::string method = "qsd";
  bool retarget = false;
  std::string out;
  std::string report;
  std::uint64_t seed = 0;
  double tol = 1e-7;
};

inline int cmd_compile(const CompileArgs& a, int max_qubits, Streams io) {
  CompileOptions opts;
  opts.method = a.method == "qrd" ? Method::QRD : Method::QSD;
  opts.retarget = a.retarget;
  opts.max_qubits = max_qubits;
  opts.seed = a.seed;
  opts.verify_tol = a.tol;
  Matrix u;
  try {
    u = load_matrix(a.matrix, opts.tol);
    qubit_count(static_cast<std::size_t>(u.rows()));
  } catch (const Error& e) {
    io.err << "error: invalid matrix '" << a.matrix << "': " << e.what() << '\n';
    return kExitBadMatrix;
  }
  CompileResult r;
  try {
    r = compile(u, opts);
  } catch (const Error& e) {
    const bool input_problem = e.code() == ErrorCode::SizeTooLarge ||
                               e.code() == ErrorCode::NotUnitary ||
                               e.code() == ErrorCode::NotPowerOfTwo;
    io.err << "error: compilation failed: " << e.what() << '\n';
    return input_problem ? kExitBadMatrix : kExitVerifyFailed;
  }
  emit(a.out, a.retarget ? emit_sequence(r.circuit) : render_qasm(r.circuit), io);
  if (a.report.empty()) {
    io.err << r.report.text();
  } else {
    write_file(a.report, r.report.text());
  }
  if (!r.report.passed) {
    io.err << "error: distance " << format_double(r.report.distance) << " exceeds tolerance "
           << format_double(a.tol) << '\n';
    return kExitVerifyFailed;
  }
  return kExitOk;
}

struct RetargetArgs {
  std::string qasm;
  std::string out;
  double tol = 1e-7;
};

inline int cmd_retarget(const RetargetArgs& a, Streams io) {
  const std::string text = read_file(a.qasm);
  Circuit in;
  try {
    in = parse_qasm(text);
  } catch (const Error& e) {
    io.err << a.qasm << ": " << e.what() << '\n';
    return kExitParse;
  }
  Circuit outc = retarget_circuit(in);
  emit(a.out, emit_sequence(outc), io);
  CompileReport rep;
  rep.n_qubits = outc.n_qubits();
  rep.counts = gate_counts(outc);
  rep.lower_bound = rep.n_qubits <= 31 ? cnot_lower_bound(rep.n_qubits) : 0;
  rep.tol = a.tol;
  rep.retargeted = true;
  if (outc.n_qubits() <= kMaxSimQubits) {
    rep.distance = phase_distance(circuit_unitary(outc), circuit_unitary(in));
    rep.passed = rep.distance < a.tol;
    io.err << rep.text();
    if (!rep.passed) {
      io.err << "error: distance " << format_double(rep.distance) << " exceeds tolerance "
             << format_double(a.tol) << '\n';
      return kExitVerifyFailed;
    }
  } else {
    io.err << rep.text() << "warning: " << outc.n_qubits() << " qubits exceeds "
           << kMaxSimQubits << "; verification skipped\n";
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string circuit;
  std::string matrix;
  double tol = 1e-7;
};

inline int cmd_verify(const VerifyArgs& a, Streams io) {
  const std::string ctext = read_file(a.circuit);
  const std::string mtext = read_file(a.matrix);
  Circuit c;
  try {
    c = parse_circuit(ctext);
  } catch (const Error& e) {
    io.err << a.circuit << ": " << e.what() << '\n';
    return kExitParse;
  }
  Matrix u;
  try {
    u = read_matrix(mtext);
    if (u.rows() != (Eigen::Index{1} << std::min(c.n_qubits(), 30))) {
      throw Error(
          ErrorCode::DimMismatch, "matrix dimension " + std::to_string(u.rows()) +
                                      " does not match a " + std::to_string(c.n_qubits()) +
                                      "-qubit circuit");
    }
  } catch (const Error& e) {
    io.err << "error: invalid matrix '" << a.matrix << "': " << e.what() << '\n';
    return kExitBadMatrix;
  }
  CompileReport rep = verify(c, u, a.tol);
  io.out << "distance: " << format_double(rep.distance) << '\n'
         << (rep.passed ? "PASS" : "FAIL") << '\n';
  return rep.passed ? kExitOk : kExitVerifyFailed;
}

struct BenchArgs {
  int n_min = 1;
  int n_max = 4;
  int samples = 5;
  std::vector<std::string> methods{"qsd"};
  std::string out;
  std::uint64_t seed = 0;
  bool no_retarget = false;
};

inline int cmd_bench(const BenchArgs& a, int max_qubits, Streams io) {
  BenchOptions b;
  b.n_min = a.n_min;
  b.n_max = a.n_max;
  b.samples = a.samples;
  b.seed = a.seed;
  b.retarget = !a.no_retarget;
  b.compile.max_qubits = max_qubits;
  b.methods.clear();
  for (const auto& m : a.methods) b.methods.push_back(m == "qrd" ? Method::QRD : Method::QSD);
  try {
    b.validate();
  } catch (const Error& e) {
    throw UsageError(e.message());
  }
  emit(a.out, bench_csv(bench(b)), io);
  return kExitOk;
}

struct RandomArgs {
  int qubits = 2;
  std::uint64_t seed = 0;
  std::string out;
};

inline int cmd_random(const RandomArgs& a, Streams io) {
  emit(a.out, write_matrix(random_unitary(a.qubits, a.seed)), io);
  return kExitOk;
}

/// Entry point shared by the executable and the tests.
inline int run(const std::vector<std::string>& argv, Streams io, const char* env_max_qubits) {
  CLI::App app{"atomqc: exact unitary compiler for the neutral-atom gate set"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "atomqc 1.0.0");

  CompileArgs ca;
  auto* compile_cmd = app.add_subcommand("compile", "Compile a unitary matrix file");
  compile_cmd->add_option("matrix", ca.matrix, "Matrix text file")->required();
  compile_cmd->add_option("--method", ca.method, "Decomposition method")
      ->check(CLI::IsMember({"qrd", "qsd"}))
      ->capture_default_str();
  compile_cmd->add_flag("--retarget", ca.retarget, "Emit a native SEQUENCE instead of QASM");
  compile_cmd->add_option("--out", ca.out, "Output path (default stdout)");
  compile_cmd->add_option("--report", ca.report, "Report path (default stderr)");
  compile_cmd->add_option("--seed", ca.seed, "Seed recorded in the report");
  compile_cmd->add_option("--tol", ca.tol, "Verification tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  RetargetArgs ra;
  auto* retarget_cmd = app.add_subcommand("retarget", "Retarget an OpenQASM 2.0 circuit");
  retarget_cmd->add_option("qasm", ra.qasm, "OpenQASM 2.0 file")->required();
  retarget_cmd->add_option("--out", ra.out, "Output path (default stdout)");
  retarget_cmd->add_option("--tol", ra.tol, "Verification tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Check a circuit against a matrix");
  verify_cmd->add_option("circuit", va.circuit, "QASM or SEQUENCE file")->required();
  verify_cmd->add_option("matrix", va.matrix, "Matrix text file")->required();
  verify_cmd->add_option("--tol", va.tol, "Tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Sweep random unitaries and write CSV");
  bench_cmd->add_option("--n-min", ba.n_min)->capture_default_str();
  bench_cmd->add_option("--n-max", ba.n_max)->capture_default_str();
  bench_cmd->add_option("--samples", ba.samples)->capture_default_str();
  bench_cmd->add_option("--methods", ba.methods, "Comma-separated list")
      ->delimiter(',')
      ->check(CLI::IsMember({"qrd", "qsd"}))
      ->capture_default_str();
  bench_cmd->add_option("--out", ba.out, "CSV path (default stdout)");
  bench_cmd->add_option("--seed", ba.seed, "Base seed")->capture_default_str();
  bench_cmd->add_flag("--no-retarget", ba.no_retarget, "Count CNOTs before retargeting");

  RandomArgs rda;
  auto* random_cmd = app.add_subcommand("random", "Write a Haar-random unitary matrix file");
  random_cmd->add_option("--qubits", rda.qubits)
      ->check(CLI::Range(1, kMaxSimQubits))
      ->capture_default_str();
  random_cmd->add_option("--seed", rda.seed)->capture_default_str();
  random_cmd->add_option("--out", rda.out, "Output path (default stdout)");

  std::vector<const char*> cargv;
  for (const auto& s : argv) cargv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, io.out, io.err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const int max_qubits = max_qubits_from_env(env_max_qubits);
    if (*compile_cmd) return cmd_compile(ca, max_qubits, io);
    if (*retarget_cmd) return cmd_retarget(ra, io);
    if (*verify_cmd) return cmd_verify(va, io);
    if (*bench_cmd) return cmd_bench(ba, max_qubits, io);
    return cmd_random(rda, io);
  } catch (const IoError& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const UsageError& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
}

}  // namespace atomqc::cli
