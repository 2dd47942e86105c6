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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace atomqc {

enum class ErrorCode {
  NotUnitary,
  OddDimension,
  NotPowerOfTwo,
  SizeTooLarge,
  DimMismatch,
  DegenerateColumn,
  EigenFailure,
  QubitOutOfRange,
  DuplicateQubit,
  InsufficientIdleQubits,
  UnsupportedGate,
  SynthesisFailure,
  SyntaxError,
  UndeclaredRegister,
  LengthNotPowerOfTwo,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::SizeTooLarge: return "SizeTooLarge";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::DegenerateColumn: return "DegenerateColumn";
    case ErrorCode::EigenFailure: return "EigenFailure";
    case ErrorCode::QubitOutOfRange: return "QubitOutOfRange";
    case ErrorCode::DuplicateQubit: return "DuplicateQubit";
    case ErrorCode::InsufficientIdleQubits: return "InsufficientIdleQubits";
    case ErrorCode::UnsupportedGate: return "UnsupportedGate";
    case ErrorCode::SynthesisFailure: return "SynthesisFailure";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UndeclaredRegister: return "UndeclaredRegister";
    case ErrorCode::LengthNotPowerOfTwo: return "LengthNotPowerOfTwo";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the error-code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

/// Error raised by the text parsers. Line and column are 1-based; a column
/// of 0 means the parser only tracks lines for that format.
class ParseError : public Error {
 public:
  ParseError(
      ErrorCode code, std::size_t line, std::size_t column,
      const std::string& message)
      : Error(code, "line " + std::to_string(line) +
                        (column ? ":" + std::to_string(column) : "") + ": " +
                        message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace atomqc
