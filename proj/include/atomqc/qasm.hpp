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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "atomqc/barenco.hpp"
#include "atomqc/simulator.hpp"

namespace atomqc {

/// Standard u3(theta, phi, lambda) matrix.
inline Mat2 u3_matrix(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Mat2 m;
  m << c, -std::polar(s, lambda), std::polar(s, phi), std::polar(c, phi + lambda);
  return m;
}

/// U = e^{i phase} u3(theta, phi, lambda).
struct U3Angles {
  double theta = 0, phi = 0, lambda = 0, phase = 0;
};

inline U3Angles u3_angles(const Mat2& u, const Tolerances& tol = {}) {
  ZyAngles z = zy_decompose(u, tol);
  return {z.gamma, z.beta, z.delta, wrap_pi(z.alpha - (z.beta + z.delta) / 2)};
}

inline constexpr int kMaxQasmQubits = 1 << 16;

namespace detail {

struct QasmToken {
  enum Kind { Ident, Int, Real, String, Sym, End } kind = End;
  std::string_view text;
  std::size_t line = 1, col = 1;
};

class QasmLexer {
 public:
  explicit QasmLexer(std::string_view src) : src_(src) {}

  QasmToken next() {
    skip_space();
    QasmToken t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) return t;
    const std::size_t start = pos_;
    const char ch = src_[pos_];
    auto is_alpha = [](char c) {
      return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    };
    auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
    if (is_alpha(ch)) {
      while (pos_ < src_.size() && (is_alpha(src_[pos_]) || is_digit(src_[pos_]))) advance();
      t.kind = QasmToken::Ident;
    } else if (is_digit(ch) || (ch == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
      t.kind = QasmToken::Int;
      while (pos_ < src_.size() && is_digit(src_[pos_])) advance();
      if (pos_ < src_.size() && src_[pos_] == '.') {
        t.kind = QasmToken::Real;
        advance();
        while (pos_ < src_.size() && is_digit(src_[pos_])) advance();
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        std::size_t look = pos_ + 1;
        if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
        if (look < src_.size() && is_digit(src_[look])) {
          t.kind = QasmToken::Real;
          while (pos_ < look) advance();
          while (pos_ < src_.size() && is_digit(src_[pos_])) advance();
        }
      }
    } else if (ch == '"') {
      advance();
      while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') advance();
      if (pos_ >= src_.size() || src_[pos_] != '"') {
        throw ParseError(ErrorCode::SyntaxError, t.line, t.col, "unterminated string");
      }
      advance();
      t.kind = QasmToken::String;
    } else if ((ch == '-' && peek(1) == '>') || (ch == '=' && peek(1) == '=')) {
      advance();
      advance();
      t.kind = QasmToken::Sym;
    } else if (std::string_view(";,()[]{}+-*/^").find(ch) != std::string_view::npos) {
      advance();
      t.kind = QasmToken::Sym;
    } else {
      std::string shown = (ch >= 32 && ch < 127) ? std::string(1, ch)
                                                 : "\\x" + hex(static_cast<unsigned char>(ch));
      throw ParseError(
          ErrorCode::SyntaxError, t.line, t.col, "unexpected character '" + shown + "'");
    }
    t.text = src_.substr(start, pos_ - start);
    return t;
  }

 private:
  static std::string hex(unsigned char c) {
    const char* d = "0123456789abcdef";
    return {d[c >> 4], d[c & 15]};
  }

  char peek(std::size_t k) const {
    return pos_ + k < src_.size() ? src_[pos_ + k] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        const std::size_t l = line_, co = col_;
        advance();
        advance();
        while (pos_ < src_.size() && !(src_[pos_] == '*' && peek(1) == '/')) advance();
        if (pos_ >= src_.size()) {
          throw ParseError(ErrorCode::SyntaxError, l, co, "unterminated comment");
        }
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

struct QasmRegister {
  int offset = 0;
  int size = 0;
  bool quantum = true;
};

struct PendingGate {
  Gate gate;
  std::size_t line, col;
};

class QasmParser {
 public:
  explicit QasmParser(std::string_view src) : lex_(src) { tok_ = lex_.next(); }

  Circuit parse() {
    if (is_ident("OPENQASM")) parse_header();
    while (tok_.kind != QasmToken::End) parse_statement();
    if (width_ == 0) {
      throw ParseError(ErrorCode::SyntaxError, tok_.line, tok_.col, "no qreg declared");
    }
    Circuit c(width_);
    for (const PendingGate& p : pending_) {
      try {
        c.append(p.gate);
      } catch (const Error& e) {
        throw ParseError(e.code(), p.line, p.col, e.message());
      }
    }
    return c;
  }

 private:
  static constexpr int kMaxDepth = 200;

  [[noreturn]] void fail(const QasmToken& t, const std::string& msg) const {
    throw ParseError(ErrorCode::SyntaxError, t.line, t.col, msg);
  }

  static std::string describe(const QasmToken& t) {
    if (t.kind == QasmToken::End) return "end of input";
    return "'" + std::string(t.text.substr(0, 32)) + "'";
  }

  bool is_sym(std::string_view s) const { return tok_.kind == QasmToken::Sym && tok_.text == s; }
  bool is_ident(std::string_view s) const {
    return tok_.kind == QasmToken::Ident && tok_.text == s;
  }

  QasmToken take() {
    QasmToken t = tok_;
    tok_ = lex_.next();
    return t;
  }

  void expect_sym(std::string_view s) {
    if (!is_sym(s)) fail(tok_, "expected '" + std::string(s) + "', found " + describe(tok_));
    take();
  }

  QasmToken expect(QasmToken::Kind k, const char* what) {
    if (tok_.kind != k) fail(tok_, std::string("expected ") + what + ", found " + describe(tok_));
    return take();
  }

  int parse_int(const QasmToken& t) {
    int v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || p != t.text.data() + t.text.size()) {
      fail(t, "integer out of range");
    }
    return v;
  }

  void parse_header() {
    take();
    QasmToken v = tok_;
    if (tok_.kind != QasmToken::Real && tok_.kind != QasmToken::Int) {
      fail(tok_, "expected version number, found " + describe(tok_));
    }
    take();
    if (v.text != "2.0" && v.text != "2") {
      fail(v, "unsupported OPENQASM version " + std::string(v.text));
    }
    expect_sym(";");
  }

  void parse_statement() {
    QasmToken head = tok_;
    if (head.kind != QasmToken::Ident) fail(head, "expected a statement, found " + describe(head));
    const std::string_view name = head.text;
    if (name == "OPENQASM") fail(head, "OPENQASM header must come first");
    if (name == "include") {
      take();
      expect(QasmToken::String, "file name");
      expect_sym(";");
      return;
    }
    if (name == "qreg" || name == "creg") {
      take();
      parse_register(name == "qreg");
      return;
    }
    if (name == "measure" || name == "reset" || name == "if" || name == "gate" ||
        name == "opaque") {
      throw ParseError(
          ErrorCode::UnsupportedGate, head.line, head.col,
          "'" + std::string(name) + "' is outside the supported subset");
    }
    take();
    if (name == "barrier") {
      parse_arguments(head);
      expect_sym(";");
      return;
    }
    apply_gate(head);
  }

  void parse_register(bool quantum) {
    QasmToken id = expect(QasmToken::Ident, "register name");
    expect_sym("[");
    QasmToken size_tok = expect(QasmToken::Int, "register size");
    int size = parse_int(size_tok);
    expect_sym("]");
    expect_sym(";");
    if (regs_.count(std::string(id.text))) {
      fail(id, "register '" + std::string(id.text) + "' already declared");
    }
    if (size < 1 || size > kMaxQasmQubits) fail(size_tok, "register size out of range");
    QasmRegister r{quantum ? width_ : 0, size, quantum};
    if (quantum) {
      if (width_ + size > kMaxQasmQubits) fail(size_tok, "too many qubits");
      width_ += size;
    }
    regs_.emplace(std::string(id.text), r);
  }

  // Each argument expands to one qubit or to a whole register.
  std::vector<std::vector<int>> parse_arguments(const QasmToken& head) {
    std::vector<std::vector<int>> args;
    while (true) {
      QasmToken id = expect(QasmToken::Ident, "qubit argument");
      auto it = regs_.find(std::string(id.text));
      if (it == regs_.end()) {
        throw ParseError(
            ErrorCode::UndeclaredRegister, id.line, id.col,
            "register '" + std::string(id.text) + "' is not declared");
      }
      const QasmRegister& r = it->second;
      if (!r.quantum) {
        fail(id, "'" + std::string(id.text) + "' is a classical register");
      }
      std::vector<int> qs;
      if (is_sym("[")) {
        take();
        QasmToken idx_tok = expect(QasmToken::Int, "qubit index");
        int idx = parse_int(idx_tok);
        expect_sym("]");
        if (idx >= r.size) {
          throw ParseError(
              ErrorCode::QubitOutOfRange, idx_tok.line, idx_tok.col,
              "index " + std::to_string(idx) + " outside '" + std::string(id.text) + "[" +
                  std::to_string(r.size) + "]'");
        }
        qs.push_back(r.offset + idx);
      } else {
        for (int k = 0; k < r.size; ++k) qs.push_back(r.offset + k);
      }
      args.push_back(std::move(qs));
      if (!is_sym(",")) break;
      take();
    }
    (void)head;
    return args;
  }

  double parse_expr(int depth) {
    if (depth > kMaxDepth) fail(tok_, "expression nested too deeply");
    double v = parse_term(depth);
    while (is_sym("+") || is_sym("-")) {
      bool plus = take().text == "+";
      double r = parse_term(depth);
      v = plus ? v + r : v - r;
    }
    return v;
  }

  double parse_term(int depth) {
    double v = parse_unary(depth);
    while (is_sym("*") || is_sym("/")) {
      bool mul = take().text == "*";
      double r = parse_unary(depth);
      v = mul ? v * r : v / r;
    }
    return v;
  }

  double parse_unary(int depth) {
    if (depth > kMaxDepth) fail(tok_, "expression nested too deeply");
    if (is_sym("-")) {
      take();
      return -parse_unary(depth + 1);
    }
    if (is_sym("+")) {
      take();
      return parse_unary(depth + 1);
    }
    double base = parse_primary(depth);
    if (is_sym("^")) {
      take();
      return std::pow(base, parse_unary(depth + 1));
    }
    return base;
  }

  double parse_primary(int depth) {
    QasmToken t = tok_;
    if (t.kind == QasmToken::Int || t.kind == QasmToken::Real) {
      take();
      double v = 0;
      auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (p != t.text.data() + t.text.size() ||
          (ec != std::errc{} && ec != std::errc::result_out_of_range)) {
        fail(t, "bad number");
      }
      if (ec == std::errc::result_out_of_range) fail(t, "number out of range");
      return v;
    }
    if (is_sym("(")) {
      take();
      double v = parse_expr(depth + 1);
      expect_sym(")");
      return v;
    }
    if (t.kind == QasmToken::Ident) {
      take();
      if (t.text == "pi") return kPi;
      using Fn = double (*)(double);
      static const std::map<std::string_view, Fn> fns = {
          {"sin", [](double x) { return std::sin(x); }},
          {"cos", [](double x) { return std::cos(x); }},
          {"tan", [](double x) { return std::tan(x); }},
          {"exp", [](double x) { return std::exp(x); }},
          {"ln", [](double x) { return std::log(x); }},
          {"sqrt", [](double x) { return std::sqrt(x); }},
      };
      auto it = fns.find(t.text);
      if (it == fns.end()) fail(t, "unknown identifier '" + std::string(t.text) + "' in expression");
      expect_sym("(");
      double v = parse_expr(depth + 1);
      expect_sym(")");
      return it->second(v);
    }
    fail(t, "expected an expression, found " + describe(t));
  }

  struct GateSpec {
    std::size_t params;
    std::size_t qubits;
  };

  static const GateSpec* lookup(std::string_view name) {
    static const std::map<std::string_view, GateSpec> table = {
        {"U", {3, 1}},   {"u3", {3, 1}},  {"u2", {2, 1}},  {"u1", {1, 1}},  {"rx", {1, 1}},
        {"ry", {1, 1}},  {"rz", {1, 1}},  {"h", {0, 1}},   {"x", {0, 1}},   {"y", {0, 1}},
        {"z", {0, 1}},   {"id", {0, 1}},  {"s", {0, 1}},   {"sdg", {0, 1}}, {"t", {0, 1}},
        {"tdg", {0, 1}}, {"CX", {0, 2}},  {"cx", {0, 2}},  {"cz", {0, 2}},  {"ccx", {0, 3}},
        {"ccz", {0, 3}},
    };
    auto it = table.find(name);
    return it == table.end() ? nullptr : &it->second;
  }

  static Gate build(std::string_view name, const std::vector<double>& p, const std::vector<int>& q) {
    auto diag = [&](double lambda) {
      Mat2 m = Mat2::Identity();
      m(1, 1) = std::polar(1.0, lambda);
      return Gate::unitary(q[0], m);
    };
    if (name == "U" || name == "u3") return Gate::unitary(q[0], u3_matrix(p[0], p[1], p[2]));
    if (name == "u2") return Gate::unitary(q[0], u3_matrix(kPi / 2, p[0], p[1]));
    if (name == "u1") return diag(p[0]);
    if (name == "rx") return Gate::rx(q[0], p[0]);
    if (name == "ry") return Gate::ry(q[0], p[0]);
    if (name == "rz") return Gate::rz(q[0], p[0]);
    if (name == "h") return Gate::h(q[0]);
    if (name == "x") return Gate::x(q[0]);
    if (name == "y") {
      Mat2 m;
      m << 0, -kI, kI, 0;
      return Gate::unitary(q[0], m);
    }
    if (name == "z") return diag(kPi);
    if (name == "s") return diag(kPi / 2);
    if (name == "sdg") return diag(-kPi / 2);
    if (name == "t") return diag(kPi / 4);
    if (name == "tdg") return diag(-kPi / 4);
    if (name == "cx" || name == "CX") return Gate::cnot(q[0], q[1]);
    if (name == "cz") return Gate::cz(q[0], q[1]);
    if (name == "ccx") return Gate::toffoli(q[0], q[1], q[2]);
    return Gate::ccz(q[0], q[1], q[2]);
  }

  void apply_gate(const QasmToken& head) {
    const GateSpec* spec = lookup(head.text);
    if (!spec) {
      throw ParseError(
          ErrorCode::UnsupportedGate, head.line, head.col,
          "unsupported gate '" + std::string(head.text.substr(0, 32)) + "'");
    }
    std::vector<double> params;
    if (is_sym("(")) {
      take();
      if (!is_sym(")")) {
        while (true) {
          QasmToken at = tok_;
          double v = parse_expr(0);
          if (!std::isfinite(v)) fail(at, "angle is not finite");
          params.push_back(v);
          if (!is_sym(",")) break;
          take();
        }
      }
      expect_sym(")");
    }
    if (params.size() != spec->params) {
      fail(head, "'" + std::string(head.text) + "' takes " + std::to_string(spec->params) +
                     " parameter(s), got " + std::to_string(params.size()));
    }
    auto args = parse_arguments(head);
    expect_sym(";");
    if (args.size() != spec->qubits) {
      fail(head, "'" + std::string(head.text) + "' takes " + std::to_string(spec->qubits) +
                     " qubit(s), got " + std::to_string(args.size()));
    }
    std::size_t reps = 1;
    for (const auto& a : args) {
      if (a.size() == 1) continue;
      if (reps != 1 && a.size() != reps) fail(head, "register sizes differ in broadcast");
      reps = a.size();
    }
    if (head.text == "id") return;
    for (std::size_t r = 0; r < reps; ++r) {
      std::vector<int> qs;
      for (const auto& a : args) qs.push_back(a.size() == 1 ? a[0] : a[r]);
      pending_.push_back({build(head.text, params, qs), head.line, head.col});
    }
  }

  QasmLexer lex_;
  QasmToken tok_;
  std::map<std::string, QasmRegister> regs_;
  int width_ = 0;
  std::vector<PendingGate> pending_;
};

}  // namespace detail

/// Parses the OpenQASM 2.0 subset. Registers are flattened in declaration
/// order. Errors are ParseError with 1-based line and column.
inline Circuit parse_qasm(std::string_view text) {
  return detail::QasmParser(text).parse();
}

/// Renders a circuit in the same subset. Gates without a 2x2 or CNOT-family
/// equivalent raise UnsupportedGate. The global phase, which the format
/// cannot express, is written as a comment.
inline std::string render_qasm(const Circuit& c) {
  std::string body;
  double phase = c.global_phase();
  auto q = [](int i) { return "q[" + std::to_string(i) + "]"; };
  auto x_wrap = [&](const Gate& g) {
    for (std::size_t k = 0; k < g.polarities.size(); ++k) {
      if (!g.polarities[k]) body += "x " + q(g.qubits[k]) + ";\n";
    }
  };
  for (const Gate& g : c.gates()) {
    switch (g.kind) {
      case GateKind::RX:
      case GateKind::RY:
      case GateKind::RZ: {
        std::string name = g.kind == GateKind::RX ? "rx" : g.kind == GateKind::RY ? "ry" : "rz";
        body += name + "(" + format_double(g.theta) + ") " + q(g.qubits[0]) + ";\n";
        break;
      }
      case GateKind::H: body += "h " + q(g.qubits[0]) + ";\n"; break;
      case GateKind::X: body += "x " + q(g.qubits[0]) + ";\n"; break;
      case GateKind::C:
        // C(theta, phi) = u3(theta, -phi, phi) exactly.
        body += "u3(" + format_double(g.theta) + "," + format_double(-g.phi) + "," +
                format_double(g.phi) + ") " + q(g.qubits[0]) + ";\n";
        break;
      case GateKind::CNOT:
        body += "cx " + q(g.qubits[0]) + "," + q(g.qubits[1]) + ";\n";
        break;
      case GateKind::CZ: body += "cz " + q(g.qubits[0]) + "," + q(g.qubits[1]) + ";\n"; break;
      case GateKind::CCZ:
        body += "ccz " + q(g.qubits[0]) + "," + q(g.qubits[1]) + "," + q(g.qubits[2]) + ";\n";
        break;
      case GateKind::MCX:
        if (g.qubits.size() > 3) {
          throw Error(ErrorCode::UnsupportedGate, "MCX with more than 2 controls has no QASM form");
        }
        x_wrap(g);
        if (g.qubits.size() == 2) {
          body += "cx " + q(g.qubits[0]) + "," + q(g.qubits[1]) + ";\n";
        } else {
          body += "ccx " + q(g.qubits[0]) + "," + q(g.qubits[1]) + "," + q(g.qubits[2]) + ";\n";
        }
        x_wrap(g);
        break;
      case GateKind::PHASE: phase += g.gamma; break;
      default: {
        if (!g.is_single_qubit()) {
          throw Error(
              ErrorCode::UnsupportedGate,
              std::string(to_string(g.kind)) + " must be lowered before rendering");
        }
        U3Angles a = u3_angles(g.matrix2());
        phase += a.phase;
        body += "u3(" + format_double(a.theta) + "," + format_double(a.phi) + "," +
                format_double(a.lambda) + ") " + q(g.qubits[0]) + ";\n";
        break;
      }
    }
  }
  std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  phase = wrap_pi(phase);
  if (phase != 0) out += "// global phase " + format_double(phase) + "\n";
  out += "qreg q[" + std::to_string(c.n_qubits()) + "];\n";
  return out + body;
}

}  // namespace atomqc
