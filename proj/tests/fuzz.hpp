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

#include <random>
#include <string>
#include <vector>

#include "atomqc/matrix_io.hpp"
#include "atomqc/qasm.hpp"
#include "atomqc/sequence.hpp"

namespace atomqc::fuzz {

inline const std::vector<std::string>& fuzz_seeds() {
  static const std::vector<std::string> seeds = {
      "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\nh q[0];\ncx q[0],q[1];\n",
      "OPENQASM 2.0;\nqreg q[3];\nu3(pi/2,-0.5e-3,2*pi) q[1];\nccx q[0],q[1],q[2];\n"
      "rz(sin(pi/3)^2) q;\nbarrier q;\n/* c */ cz q[2],q[0]; // tail\n",
      "SEQUENCE 1\nQUBITS 3\nPHASE 1.5707963267948966\nC 0 0.5 1.25\nCZ 0 1\n"
      "CCZ 0 1 2\n# comment\n",
      "2\n1+0i 0+0i\n0+0i 1+0i\n",
      "2\n0.70710678118654757+0i 0.70710678118654757-0i\n"
      "0.70710678118654757+0i -0.70710678118654757+0i\n",
  };
  return seeds;
}

/// Random bytes, token soup, or a mutated valid document.
inline std::string fuzz_input(std::mt19937_64& rng) {
  static const std::vector<std::string> tokens = {
      "OPENQASM", "2.0", ";", "qreg", "creg", "q", "[", "]", "(", ")", ",", "pi", "-",
      "+", "*", "/", "^", "h", "cx", "u3", "rz", "ccx", "barrier", "measure", "->",
      "1e308", "1e-400", "0", "7", "99999999999", "\n", " ", "//", "/*", "*/",
      "\"qelib1.inc\"", "include", "SEQUENCE", "QUBITS", "PHASE", "C", "CZ", "CCZ",
      "#", "1", "nan", "inf", "+0i", "-1i", "2", "sin(", "sqrt(", "((((((", "\r",
  };
  const auto& seeds = fuzz_seeds();
  std::string s;
  switch (rng() % 3) {
    case 0: {
      std::size_t len = rng() % 64;
      for (std::size_t i = 0; i < len; ++i) s.push_back(static_cast<char>(rng() & 0xff));
      break;
    }
    case 1: {
      std::size_t len = rng() % 40;
      for (std::size_t i = 0; i < len; ++i) s += tokens[rng() % tokens.size()];
      break;
    }
    default: {
      s = seeds[rng() % seeds.size()];
      std::size_t edits = 1 + rng() % 6;
      for (std::size_t e = 0; e < edits && !s.empty(); ++e) {
        std::size_t pos = rng() % s.size();
        switch (rng() % 4) {
          case 0: s[pos] = static_cast<char>(rng() & 0xff); break;
          case 1: s.erase(pos, 1 + rng() % 4); break;
          case 2: s.insert(pos, tokens[rng() % tokens.size()]); break;
          default: s.insert(pos, s.substr(rng() % s.size(), rng() % 16)); break;
        }
      }
      break;
    }
  }
  return s;
}

/// Runs every parser on `text`. Returns false if anything other than the
/// library's own error type escaped.
inline bool parsers_survive(const std::string& text) {
  auto guarded = [&](auto&& fn) {
    try {
      fn();
    } catch (const Error&) {
    } catch (...) {
      return false;
    }
    return true;
  };
  bool ok = guarded([&] { parse_qasm(text); });
  ok = guarded([&] { parse_sequence(text); }) && ok;
  ok = guarded([&] { read_matrix(text); }) && ok;
  return ok;
}

}  // namespace atomqc::fuzz
