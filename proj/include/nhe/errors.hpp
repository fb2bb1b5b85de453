// Copyright 2026 The nhentropy Authors
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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nhe {

/// Machine-readable failure category carried by every library exception.
enum class ErrorCode {
  dimension_mismatch,
  not_hermitian,
  not_psd,
  trace_violation,
  probability_extinct,
  no_convergence,
  overflow,
  out_of_domain,
  rate_undefined,
  inconsistent_pair,
  invalid_argument,
  // scenario and expression front end
  lex_error,
  syntax_error,
  unknown_key,
  missing_key,
  duplicate_key,
  range_error,
  eval_error,
  io_error,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Numerical failure that happened at a known simulation time.
class TimedError : public Error {
 public:
  TimedError(ErrorCode code, const std::string& message, std::optional<double> time)
      : Error(code, message), time_(time) {}

  std::optional<double> time() const noexcept { return time_; }

 private:
  std::optional<double> time_;
};

/// Front-end diagnostic with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& message, std::size_t line,
             std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

}  // namespace nhe
