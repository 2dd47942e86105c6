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
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "atomqc/sequence.hpp"

// Matrix text format: the dimension on the first line, then one row per
// line of whitespace-separated entries written a+bi or a-bi.

namespace atomqc {

inline constexpr long kMaxMatrixDim = 1L << kMaxSimQubits;

inline std::string format_complex(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

inline std::string write_matrix(const Matrix& m) {
  require_square(m);
  std::string out = std::to_string(m.rows()) + "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ' ';
      out += format_complex(m(r, c));
    }
    out += '\n';
  }
  return out;
}

namespace detail {

inline Complex parse_complex(std::string_view w, std::size_t line, std::size_t col) {
  auto fail = [&] {
    return ParseError(
        ErrorCode::SyntaxError, line, col,
        "expected a+bi, got '" + std::string(w.substr(0, 64)) + "'");
  };
  const char* first = w.data();
  const char* last = w.data() + w.size();
  double re = 0, im = 0;
  auto r1 = std::from_chars(first, last, re);
  if (r1.ec != std::errc{} || r1.ptr == last) throw fail();
  const char* p = r1.ptr;
  if (*p == '+') {
    ++p;
    if (p == last || *p == '-' || *p == '+') throw fail();
  } else if (*p != '-') {
    throw fail();
  }
  auto r2 = std::from_chars(p, last, im);
  if (r2.ec != std::errc{} || r2.ptr + 1 != last || *r2.ptr != 'i') throw fail();
  if (!std::isfinite(re) || !std::isfinite(im)) throw fail();
  return {re, im};
}

}  // namespace detail

/// Parses the matrix text format without checking unitarity. Blank lines
/// are skipped.
inline Matrix parse_matrix(std::string_view text) {
  std::size_t line_no = 0, pos = 0;
  long dim = -1;
  Eigen::Index row = 0;
  std::vector<Complex> entries;  // row-major, grown as rows arrive
  while (pos <= text.size()) {
    if (pos == text.size() && pos > 0 && text[pos - 1] == '\n') break;
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    const std::size_t line_start = pos;
    pos = end + 1;
    ++line_no;
    auto words = detail::split_words(line);
    if (words.empty()) continue;
    auto column = [&](std::string_view w) {
      return static_cast<std::size_t>(w.data() - text.data()) - line_start + 1;
    };
    if (dim < 0) {
      if (words.size() != 1) {
        throw ParseError(ErrorCode::SyntaxError, line_no, 1, "expected the dimension alone");
      }
      auto [p, ec] = std::from_chars(words[0].data(), words[0].data() + words[0].size(), dim);
      if (ec != std::errc{} || p != words[0].data() + words[0].size() || dim < 1) {
        throw ParseError(ErrorCode::SyntaxError, line_no, 1, "bad dimension");
      }
      if (dim > kMaxMatrixDim) {
        throw ParseError(
            ErrorCode::SizeTooLarge, line_no, 1,
            "dimension exceeds " + std::to_string(kMaxMatrixDim));
      }
      continue;
    }
    if (row == dim) {
      throw ParseError(ErrorCode::SyntaxError, line_no, 1, "more rows than the dimension");
    }
    if (static_cast<long>(words.size()) != dim) {
      throw ParseError(
          ErrorCode::SyntaxError, line_no, 1,
          "row has " + std::to_string(words.size()) + " entries, expected " +
              std::to_string(dim));
    }
    for (std::string_view w : words) {
      entries.push_back(detail::parse_complex(w, line_no, column(w)));
    }
    ++row;
  }
  if (dim < 0) throw ParseError(ErrorCode::SyntaxError, line_no, 0, "empty matrix file");
  if (row != dim) {
    throw ParseError(
        ErrorCode::SyntaxError, line_no, 0,
        "expected " + std::to_string(dim) + " rows, got " + std::to_string(row));
  }
  Matrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      m(r, c) = entries[static_cast<std::size_t>(r * dim + c)];
    }
  }
  return m;
}

/// parse_matrix followed by a unitarity check.
inline Matrix read_matrix(std::string_view text, const Tolerances& tol = {}) {
  Matrix m = parse_matrix(text);
  require_unitary(m, tol.tol_unitary);
  return m;
}

}  // namespace atomqc
