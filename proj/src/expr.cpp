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

#include "nhe/expr.hpp"

#include <fmt/format.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

#include "nhe/operators.hpp"
#include "nhe/units.hpp"

namespace nhe {

bool same_tree(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind || a.name != b.name) return false;
  if (a.value != b.value) return false;
  const auto same_child = [](const ExprPtr& x, const ExprPtr& y) {
    if (!x || !y) return !x && !y;
    return same_tree(*x, *y);
  };
  return same_child(a.lhs, b.lhs) && same_child(a.rhs, b.rhs);
}

namespace {

using Kind = ExprNode::Kind;

struct Token {
  enum class Type { number, ident, plus, minus, star, lparen, rparen, end };
  Type type;
  std::string_view text;
  double number = 0.0;
  std::size_t column = 0;
};

[[noreturn]] void fail(ErrorCode code, std::size_t column, const std::string& msg) {
  throw ParseError(code, msg, 1, column);
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    const std::size_t col = i + 1;
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (std::isdigit(c) || (c == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && s[j] == '.') {
        ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      }
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
          while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
          j = k;
        } else {
          fail(ErrorCode::lex_error, j + 1, "malformed exponent in number");
        }
      }
      const std::string_view text = s.substr(i, j - i);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
        fail(ErrorCode::lex_error, col, fmt::format("number '{}' is not representable", text));
      }
      out.push_back({Token::Type::number, text, v, col});
      i = j;
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Type::ident, s.substr(i, j - i), 0.0, col});
      i = j;
      continue;
    }
    Token::Type t;
    switch (c) {
      case '+': t = Token::Type::plus; break;
      case '-': t = Token::Type::minus; break;
      case '*': t = Token::Type::star; break;
      case '(': t = Token::Type::lparen; break;
      case ')': t = Token::Type::rparen; break;
      default:
        fail(ErrorCode::lex_error, col,
             std::isprint(c) ? fmt::format("unexpected character '{}'", static_cast<char>(c))
                             : fmt::format("unexpected byte 0x{:02x}", static_cast<unsigned>(c)));
    }
    out.push_back({t, s.substr(i, 1), 0.0, col});
    ++i;
  }
  out.push_back({Token::Type::end, {}, 0.0, s.size() + 1});
  return out;
}

ExprPtr make(Kind kind, std::size_t column, ExprPtr lhs = nullptr, ExprPtr rhs = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->column = column;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ExprPtr parse() {
    if (peek().type == Token::Type::end) fail(ErrorCode::syntax_error, peek().column, "empty expression");
    auto e = expr();
    if (peek().type != Token::Type::end) {
      fail(ErrorCode::syntax_error, peek().column, fmt::format("unexpected '{}'", peek().text));
    }
    return e;
  }

 private:
  static constexpr int kMaxDepth = 200;

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  void expect(Token::Type t, const char* what) {
    if (peek().type != t) {
      const auto& tok = peek();
      fail(ErrorCode::syntax_error, tok.column,
           fmt::format("expected {} but found {}", what, tok.type == Token::Type::end ? "end of input" : fmt::format("'{}'", tok.text)));
    }
    ++pos_;
  }

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > kMaxDepth) fail(ErrorCode::syntax_error, p.peek().column, "expression nested too deeply");
    }
    ~DepthGuard() { --p.depth_; }
  };

  ExprPtr expr() {
    DepthGuard guard(*this);
    auto lhs = term();
    while (peek().type == Token::Type::plus || peek().type == Token::Type::minus) {
      const auto& op = next();
      auto rhs = term();
      lhs = make(op.type == Token::Type::plus ? Kind::add : Kind::subtract, op.column, lhs, rhs);
    }
    return lhs;
  }

  ExprPtr term() {
    auto lhs = factor();
    while (peek().type == Token::Type::star) {
      const auto& op = next();
      auto rhs = factor();
      lhs = make(Kind::multiply, op.column, lhs, rhs);
    }
    return lhs;
  }

  ExprPtr factor() {
    DepthGuard guard(*this);
    const Token& tok = next();
    switch (tok.type) {
      case Token::Type::minus: return make(Kind::negate, tok.column, factor());
      case Token::Type::number: {
        auto n = make(Kind::number, tok.column);
        std::const_pointer_cast<ExprNode>(n)->value = tok.number;
        return n;
      }
      case Token::Type::lparen: {
        auto e = expr();
        expect(Token::Type::rparen, "')'");
        return e;
      }
      case Token::Type::ident: {
        if (tok.text == "i") return make(Kind::imaginary_unit, tok.column);
        auto n = std::make_shared<ExprNode>();
        n->name = std::string(tok.text);
        n->column = tok.column;
        if (peek().type == Token::Type::lparen) {
          next();
          if (peek().type != Token::Type::number) {
            fail(ErrorCode::syntax_error, peek().column, fmt::format("'{}(' must be followed by a number", tok.text));
          }
          n->kind = Kind::call;
          n->value = next().number;
          expect(Token::Type::rparen, "')'");
        } else {
          n->kind = Kind::identifier;
        }
        return n;
      }
      case Token::Type::end: fail(ErrorCode::syntax_error, tok.column, "unexpected end of input");
      default: fail(ErrorCode::syntax_error, tok.column, fmt::format("unexpected '{}'", tok.text));
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

enum class Context { sum, product_lhs, operand };

std::string print_node(const ExprNode& n, Context ctx) {
  const auto wrap = [](std::string s) { return "(" + s + ")"; };
  switch (n.kind) {
    case Kind::number: return format_number(n.value);
    case Kind::imaginary_unit: return "i";
    case Kind::identifier: return n.name;
    case Kind::call: return n.name + "(" + format_number(n.value) + ")";
    case Kind::negate: return "-" + print_node(*n.lhs, Context::operand);
    case Kind::add:
    case Kind::subtract: {
      std::string s = print_node(*n.lhs, Context::sum) + (n.kind == Kind::add ? " + " : " - ") +
                      print_node(*n.rhs, Context::product_lhs);
      return ctx == Context::sum ? s : wrap(s);
    }
    case Kind::multiply: {
      std::string s = print_node(*n.lhs, Context::product_lhs) + "*" + print_node(*n.rhs, Context::operand);
      return ctx == Context::operand ? wrap(s) : s;
    }
  }
  return {};
}

ExprValue eval_node(const ExprNode& n, const ConstantEnv& env) {
  const auto err = [&](const std::string& msg) -> ParseError {
    return ParseError(ErrorCode::eval_error, msg, 1, n.column);
  };
  switch (n.kind) {
    case Kind::number: return Complex(n.value);
    case Kind::imaginary_unit: return kI;
    case Kind::identifier: {
      if (n.name == "sx") return pauli(PauliAxis::x);
      if (n.name == "sy") return pauli(PauliAxis::y);
      if (n.name == "sz") return pauli(PauliAxis::z);
      if (auto it = env.find(n.name); it != env.end()) return Complex(it->second);
      throw err(fmt::format("unknown name '{}'", n.name));
    }
    case Kind::call: {
      if (n.name != "id") throw err(fmt::format("unknown function '{}'", n.name));
      if (n.value < 1 || n.value > 64 || n.value != std::floor(n.value)) {
        throw err(fmt::format("id() needs an integer dimension in [1, 64], got {}", n.value));
      }
      return ComplexMatrix::identity(static_cast<std::size_t>(n.value));
    }
    case Kind::negate: {
      auto v = eval_node(*n.lhs, env);
      return std::visit([](auto x) -> ExprValue { return -x; }, std::move(v));
    }
    case Kind::add:
    case Kind::subtract: {
      auto a = eval_node(*n.lhs, env);
      auto b = eval_node(*n.rhs, env);
      const bool add = n.kind == Kind::add;
      if (std::holds_alternative<Complex>(a) && std::holds_alternative<Complex>(b)) {
        return add ? std::get<Complex>(a) + std::get<Complex>(b) : std::get<Complex>(a) - std::get<Complex>(b);
      }
      if (std::holds_alternative<ComplexMatrix>(a) && std::holds_alternative<ComplexMatrix>(b)) {
        const auto& ma = std::get<ComplexMatrix>(a);
        const auto& mb = std::get<ComplexMatrix>(b);
        if (ma.dim() != mb.dim()) throw err(fmt::format("dimension mismatch: {} vs {}", ma.dim(), mb.dim()));
        return add ? ma + mb : ma - mb;
      }
      throw err("cannot add a scalar and a matrix (scale id(n) instead)");
    }
    case Kind::multiply: {
      auto a = eval_node(*n.lhs, env);
      auto b = eval_node(*n.rhs, env);
      if (std::holds_alternative<Complex>(a)) {
        if (std::holds_alternative<Complex>(b)) return std::get<Complex>(a) * std::get<Complex>(b);
        return std::get<Complex>(a) * std::get<ComplexMatrix>(b);
      }
      if (std::holds_alternative<Complex>(b)) return std::get<ComplexMatrix>(a) * std::get<Complex>(b);
      const auto& ma = std::get<ComplexMatrix>(a);
      const auto& mb = std::get<ComplexMatrix>(b);
      if (ma.dim() != mb.dim()) throw err(fmt::format("dimension mismatch: {} vs {}", ma.dim(), mb.dim()));
      return ma * mb;
    }
  }
  throw err("malformed expression");
}

}  // namespace

OperatorExpr parse_operator_expr(std::string_view text) {
  Parser parser(lex(text));
  return OperatorExpr{parser.parse()};
}

std::string print(const OperatorExpr& expr) {
  if (!expr.root) return {};
  return print_node(*expr.root, Context::sum);
}

ExprValue evaluate(const OperatorExpr& expr, const ConstantEnv& env) {
  if (!expr.root) throw ParseError(ErrorCode::eval_error, "empty expression", 1, 1);
  auto v = eval_node(*expr.root, env);
  const bool finite = std::visit(
      [](const auto& x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Complex>) {
          return std::isfinite(x.real()) && std::isfinite(x.imag());
        } else {
          return all_finite(x);
        }
      },
      v);
  if (!finite) throw ParseError(ErrorCode::eval_error, "expression evaluates to a non-finite value", 1, 1);
  return v;
}

ComplexMatrix evaluate_hermitian(const OperatorExpr& expr, const ConstantEnv& env, std::string_view slot) {
  auto v = evaluate(expr, env);
  if (!std::holds_alternative<ComplexMatrix>(v)) {
    throw ParseError(ErrorCode::eval_error, fmt::format("{} must evaluate to a matrix, got a scalar", slot), 1, 1);
  }
  auto m = std::get<ComplexMatrix>(std::move(v));
  if (!is_hermitian(m, tol::kHermitian)) {
    throw ParseError(ErrorCode::eval_error,
                     fmt::format("{} is not Hermitian (max asymmetry {:.3e})", slot, hermitian_defect(m)), 1, 1);
  }
  return m;
}

}  // namespace nhe
