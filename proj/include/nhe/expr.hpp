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

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "nhe/matrix.hpp"

namespace nhe {

// Operator expressions used by scenario files, e.g.
//   H     = -delta*sx
//   Gamma = gamma*sz + 1.5*mu*delta*id(2)
//
// Grammar:
//   expr   := term (("+" | "-") term)*
//   term   := factor ("*" factor)*
//   factor := "-" factor | number | "i" | ident "(" number ")" | ident | "(" expr ")"

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { number, imaginary_unit, identifier, call, negate, add, subtract, multiply };

  Kind kind = Kind::number;
  double value = 0.0;  ///< number literal, or the call argument
  std::string name;    ///< identifier or function name
  ExprPtr lhs;         ///< operand of negate, left operand of binaries
  ExprPtr rhs;
  std::size_t column = 0;  ///< 1-based, for diagnostics; ignored by equality
};

/// Structural equality (source positions are ignored).
bool same_tree(const ExprNode& a, const ExprNode& b);

struct OperatorExpr {
  ExprPtr root;

  friend bool operator==(const OperatorExpr& a, const OperatorExpr& b) {
    return a.root && b.root && same_tree(*a.root, *b.root);
  }
};

/// Throws ParseError (lex_error / syntax_error) with line 1 and the column.
OperatorExpr parse_operator_expr(std::string_view text);

/// Canonical text; parse_operator_expr(print(e)) == e.
std::string print(const OperatorExpr& expr);

using ExprValue = std::variant<Complex, ComplexMatrix>;
using ConstantEnv = std::map<std::string, double, std::less<>>;

/// Evaluates against named real constants. Built-ins: sx, sy, sz, id(n), i.
/// Throws ParseError(eval_error) on unknown names or shape errors.
ExprValue evaluate(const OperatorExpr& expr, const ConstantEnv& env);

/// Evaluates to a matrix and checks it is Hermitian; `slot` names the
/// operator in diagnostics.
ComplexMatrix evaluate_hermitian(const OperatorExpr& expr, const ConstantEnv& env, std::string_view slot);

}  // namespace nhe
