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

#include "nhe/matrix.hpp"

#include <fmt/format.h>

namespace nhe {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::not_hermitian: return "not_hermitian";
    case ErrorCode::not_psd: return "not_psd";
    case ErrorCode::trace_violation: return "trace_violation";
    case ErrorCode::probability_extinct: return "probability_extinct";
    case ErrorCode::no_convergence: return "no_convergence";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::out_of_domain: return "out_of_domain";
    case ErrorCode::rate_undefined: return "rate_undefined";
    case ErrorCode::inconsistent_pair: return "inconsistent_pair";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::lex_error: return "lex_error";
    case ErrorCode::syntax_error: return "syntax_error";
    case ErrorCode::unknown_key: return "unknown_key";
    case ErrorCode::missing_key: return "missing_key";
    case ErrorCode::duplicate_key: return "duplicate_key";
    case ErrorCode::range_error: return "range_error";
    case ErrorCode::eval_error: return "eval_error";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

ParseError::ParseError(ErrorCode code, const std::string& message, std::size_t line,
                       std::size_t column)
    : Error(code, fmt::format("{}:{}: {}: {}", line, column, to_string(code), message)),
      line_(line),
      column_(column),
      detail_(message) {}

std::string to_string(const ComplexMatrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j) out += ", ";
      out += fmt::format("{:.6g}{:+.6g}i", m(i, j).real(), m(i, j).imag());
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace nhe
