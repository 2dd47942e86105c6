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

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "atomqc/simulator.hpp"

// SEQUENCE v1, one instruction per line:
//
//   SEQUENCE 1
//   QUBITS <n>
//   PHASE <gamma>          (only when gamma != 0)
//   C <q> <theta> <phi>
//   CZ <q1> <q2>
//   CCZ <q1> <q2> <q3>
//
// Angles are radians printed with 17 significant digits. '#' starts a
// comment and blank lines are ignored.

namespace atomqc {

inline constexpr int kMaxSequenceQubits = 1 << 16;

/// Text for a native circuit. Throws UnsupportedGate for anything other
/// than C, CZ and CCZ.
inline std::string emit_sequence(const Circuit& c) {
  std::string out = "SEQUENCE 1\nQUBITS " + std::to_string(c.n_qubits()) + "\n";
  if (c.global_phase() != 0) out += "PHASE " + format_double(c.global_phase()) + "\n";
  for (const Gate& g : c.gates()) {
    switch (g.kind) {
      case GateKind::C:
        out += "C " + std::to_string(g.qubits[0]) + ' ' + format_double(g.theta) + ' ' +
               format_double(g.phi) + '\n';
        break;
      case GateKind::CZ:
        out += "CZ " + std::to_string(g.qubits[0]) + ' ' + std::to_string(g.qubits[1]) + '\n';
        break;
      case GateKind::CCZ:
        out += "CCZ " + std::to_string(g.qubits[0]) + ' ' + std::to_string(g.qubits[1]) +
               ' ' + std::to_string(g.qubits[2]) + '\n';
        break;
      default:
        throw Error(
            ErrorCode::UnsupportedGate,
            std::string(to_string(g.kind)) + " is not native; retarget the circuit first");
    }
  }
  return out;
}

namespace detail {

inline std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) words.push_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

inline double parse_real(std::string_view w, std::size_t line) {
  double v = 0;
  auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc{} || p != w.data() + w.size() || !std::isfinite(v)) {
    throw ParseError(ErrorCode::SyntaxError, line, 0, "bad number '" + std::string(w) + "'");
  }
  return v;
}

inline int parse_index(std::string_view w, std::size_t line) {
  int v = 0;
  auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc{} || p != w.data() + w.size() || v < 0) {
    throw ParseError(
        ErrorCode::SyntaxError, line, 0, "bad qubit index '" + std::string(w) + "'");
  }
  return v;
}

}  // namespace detail

/// Inverse of emit_sequence. Errors carry the 1-based line number.
inline Circuit parse_sequence(std::string_view text) {
  enum class Stage { Header, Qubits, Body } stage = Stage::Header;
  Circuit c;
  bool any_gate = false;
  bool have_phase = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    if (pos == text.size() && pos > 0 && text[pos - 1] == '\n') break;
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    auto w = detail::split_words(line);
    if (w.empty()) continue;
    auto expect_args = [&](std::size_t k) {
      if (w.size() != k + 1) {
        throw ParseError(
            ErrorCode::SyntaxError, line_no, 0,
            std::string(w[0]) + " takes " + std::to_string(k) + " operand(s)");
      }
    };
    switch (stage) {
      case Stage::Header:
        if (w.size() != 2 || w[0] != "SEQUENCE") {
          throw ParseError(ErrorCode::SyntaxError, line_no, 0, "expected 'SEQUENCE 1'");
        }
        if (w[1] != "1") {
          throw ParseError(
              ErrorCode::SyntaxError, line_no, 0,
              "unsupported SEQUENCE version '" + std::string(w[1]) + "'");
        }
        stage = Stage::Qubits;
        continue;
      case Stage::Qubits: {
        if (w[0] != "QUBITS") {
          throw ParseError(ErrorCode::SyntaxError, line_no, 0, "expected 'QUBITS <n>'");
        }
        expect_args(1);
        int n = detail::parse_index(w[1], line_no);
        if (n < 1 || n > kMaxSequenceQubits) {
          throw ParseError(
              ErrorCode::SyntaxError, line_no, 0, "qubit count out of range");
        }
        c = Circuit(n);
        stage = Stage::Body;
        continue;
      }
      case Stage::Body: break;
    }
    try {
      if (w[0] == "PHASE") {
        expect_args(1);
        if (have_phase || any_gate) {
          throw ParseError(
              ErrorCode::SyntaxError, line_no, 0, "PHASE must appear once, before gates");
        }
        have_phase = true;
        c.set_phase(detail::parse_real(w[1], line_no));
        continue;
      }
      if (w[0] == "C") {
        expect_args(3);
        c.append(Gate::c(
            detail::parse_index(w[1], line_no), detail::parse_real(w[2], line_no),
            detail::parse_real(w[3], line_no)));
      } else if (w[0] == "CZ") {
        expect_args(2);
        c.append(
            Gate::cz(detail::parse_index(w[1], line_no), detail::parse_index(w[2], line_no)));
      } else if (w[0] == "CCZ") {
        expect_args(3);
        c.append(Gate::ccz(
            detail::parse_index(w[1], line_no), detail::parse_index(w[2], line_no),
            detail::parse_index(w[3], line_no)));
      } else {
        throw ParseError(
            ErrorCode::SyntaxError, line_no, 0,
            "unknown instruction '" + std::string(w[0]) + "'");
      }
      any_gate = true;
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.code(), line_no, 0, e.message());
    }
  }
  if (stage != Stage::Body) {
    throw ParseError(
        ErrorCode::SyntaxError, line_no, 0,
        stage == Stage::Header ? "missing 'SEQUENCE 1' header" : "missing 'QUBITS <n>'");
  }
  return c;
}

}  // namespace atomqc
