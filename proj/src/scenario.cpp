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

#include "nhe/scenario.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

#include "nhe/dynamics.hpp"
#include "nhe/linalg.hpp"
#include "nhe/units.hpp"

namespace nhe {

std::string_view to_string(ModelKind m) {
  switch (m) {
    case ModelKind::const_gamma: return "const_gamma";
    case ModelKind::two_level: return "two_level";
    case ModelKind::custom: return "custom";
  }
  return "unknown";
}

std::string_view to_string(IntegratorKind m) { return m == IntegratorKind::exact ? "exact" : "rk4"; }

std::string to_string(FigureId f) { return fmt::format("fig{}", static_cast<int>(f)); }

std::optional<FigureId> parse_figure_id(std::string_view text) {
  if (text.size() == 4 && text.substr(0, 3) == "fig" && text[3] >= '1' && text[3] <= '7') {
    return static_cast<FigureId>(text[3] - '0');
  }
  return std::nullopt;
}

namespace {

struct Entry {
  std::string key;
  std::string value;
  std::size_t line;
  std::size_t key_col;
  std::size_t value_col;
};

struct Block {
  std::string kind;  // "constants" or model name
  std::size_t line;
  std::vector<Entry> entries;
};

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::size_t first_non_space(std::string_view s, std::size_t from = 0) {
  while (from < s.size() && std::isspace(static_cast<unsigned char>(s[from]))) ++from;
  return from;
}

std::string_view trim_right(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<Block> split_blocks(std::string_view text) {
  std::vector<Block> blocks;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim_right(line);
    const std::size_t start = first_non_space(line);
    if (start == line.size()) {
      if (eol == text.size()) break;
      continue;
    }
    const std::size_t col = start + 1;
    if (line[start] == '[') {
      if (line.back() != ']') throw ParseError(ErrorCode::syntax_error, "block header must end with ']'", line_no, line.size() + 1);
      std::string_view inner = line.substr(start + 1, line.size() - start - 2);
      const std::size_t a = first_non_space(inner);
      inner = trim_right(inner.substr(a));
      if (inner == "constants") {
        blocks.push_back({"constants", line_no, {}});
      } else if (inner.substr(0, 5) == "model" && inner.size() > 5 && std::isspace(static_cast<unsigned char>(inner[5]))) {
        std::string_view name = inner.substr(first_non_space(inner, 5));
        if (name != "two_level" && name != "const_gamma" && name != "custom") {
          throw ParseError(ErrorCode::syntax_error,
                           fmt::format("unknown model '{}' (expected two_level, const_gamma or custom)", name),
                           line_no, col + 1 + a + (name.data() - inner.data()));
        }
        blocks.push_back({std::string(name), line_no, {}});
      } else {
        throw ParseError(ErrorCode::syntax_error, "expected '[model <name>]' or '[constants]'", line_no, col);
      }
      if (eol == text.size()) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(ErrorCode::syntax_error, "expected 'key = value'", line_no, col);
    const std::string_view key = trim_right(line.substr(start, eq - start));
    if (!is_identifier(key)) {
      throw ParseError(ErrorCode::syntax_error, fmt::format("invalid key '{}'", key), line_no, col);
    }
    const std::size_t vstart = first_non_space(line, eq + 1);
    if (vstart == line.size()) throw ParseError(ErrorCode::syntax_error, fmt::format("missing value for '{}'", key), line_no, eq + 2);
    if (blocks.empty()) {
      throw ParseError(ErrorCode::syntax_error, "key outside of a block; start with '[model <name>]'", line_no, col);
    }
    auto& entries = blocks.back().entries;
    for (const auto& e : entries) {
      if (e.key == key) {
        throw ParseError(ErrorCode::duplicate_key, fmt::format("'{}' already set on line {}", key, e.line), line_no, col);
      }
    }
    entries.push_back({std::string(key), std::string(line.substr(vstart)), line_no, col, vstart + 1});
    if (eol == text.size()) break;
  }
  return blocks;
}

double parse_real(const Entry& e) {
  double v = 0.0;
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  if (*b == '+') ++b;
  const auto [ptr, ec] = std::from_chars(b, end, v);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(ErrorCode::syntax_error, fmt::format("'{}' is not a number", e.value), e.line, e.value_col);
  }
  if (!std::isfinite(v)) throw ParseError(ErrorCode::range_error, fmt::format("{} must be finite", e.key), e.line, e.value_col);
  return v;
}

long long parse_integer(const Entry& e, long long lo, long long hi) {
  long long v = 0;
  const char* b = e.value.data();
  const char* end = b + e.value.size();
  const auto [ptr, ec] = std::from_chars(b, end, v);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError(ErrorCode::range_error, fmt::format("{} is out of range", e.key), e.line, e.value_col);
  }
  if (ec != std::errc() || ptr != end) {
    throw ParseError(ErrorCode::syntax_error, fmt::format("'{}' is not an integer", e.value), e.line, e.value_col);
  }
  if (v < lo || v > hi) {
    throw ParseError(ErrorCode::range_error, fmt::format("{} must lie in [{}, {}], got {}", e.key, lo, hi, v), e.line,
                     e.value_col);
  }
  return v;
}

struct ModelKeys {
  std::set<std::string> numeric_required, numeric_optional, expr_required, expr_optional;
};

const ModelKeys& keys_for(ModelKind m) {
  static const ModelKeys two_level{{"delta", "gamma", "p", "k"}, {}, {}, {}};
  static const ModelKeys const_gamma{{"gamma0"}, {"p", "delta"}, {}, {"H", "rho0"}};
  static const ModelKeys custom{{}, {"p", "delta", "gamma", "k"}, {"H", "Gamma"}, {"rho0"}};
  switch (m) {
    case ModelKind::two_level: return two_level;
    case ModelKind::const_gamma: return const_gamma;
    case ModelKind::custom: return custom;
  }
  return custom;
}

const std::set<std::string> kCommonKeys{"t_max", "samples", "integrator", "substeps", "csv", "figure"};
const std::set<std::string> kReservedNames{"sx", "sy", "sz", "i", "id", "mu"};

ModelKind model_kind(const std::string& name) {
  if (name == "two_level") return ModelKind::two_level;
  if (name == "const_gamma") return ModelKind::const_gamma;
  return ModelKind::custom;
}

// Re-anchors an expression diagnostic (line 1, column c) at the entry value.
[[noreturn]] void rethrow_at(const ParseError& e, const Entry& entry) {
  const bool named = e.detail().rfind(entry.key, 0) == 0;
  throw ParseError(e.code(), named ? e.detail() : fmt::format("{}: {}", entry.key, e.detail()), entry.line,
                   entry.value_col + e.column() - 1);
}

Scenario build(const Block& block, const ConstantEnv& constants) {
  Scenario s;
  s.model = model_kind(block.kind);
  s.line = block.line;
  s.constants = constants;
  const auto& keys = keys_for(s.model);

  bool have_t_max = false, have_samples = false;
  for (const auto& e : block.entries) {
    if (kCommonKeys.count(e.key)) {
      if (e.key == "t_max") {
        s.t_max = parse_real(e);
        if (!(s.t_max > 0)) throw ParseError(ErrorCode::range_error, "t_max must be positive", e.line, e.value_col);
        have_t_max = true;
      } else if (e.key == "samples") {
        s.samples = static_cast<std::size_t>(parse_integer(e, 2, 10'000'000));
        have_samples = true;
      } else if (e.key == "substeps") {
        s.substeps = static_cast<int>(parse_integer(e, 1, 1'000'000));
      } else if (e.key == "integrator") {
        if (e.value == "exact") {
          s.integrator = IntegratorKind::exact;
        } else if (e.value == "rk4") {
          s.integrator = IntegratorKind::rk4;
        } else {
          throw ParseError(ErrorCode::range_error, fmt::format("integrator must be 'exact' or 'rk4', got '{}'", e.value),
                           e.line, e.value_col);
        }
      } else if (e.key == "csv") {
        s.csv = e.value;
      } else if (e.key == "figure") {
        s.figure = parse_figure_id(e.value);
        if (!s.figure) {
          throw ParseError(ErrorCode::range_error, fmt::format("figure must be fig1..fig7, got '{}'", e.value), e.line,
                           e.value_col);
        }
      }
    } else if (keys.numeric_required.count(e.key) || keys.numeric_optional.count(e.key)) {
      if (constants.count(e.key)) {
        throw ParseError(ErrorCode::duplicate_key, fmt::format("'{}' is also defined in [constants]", e.key), e.line, e.key_col);
      }
      s.params[e.key] = parse_real(e);
    } else if (keys.expr_required.count(e.key) || keys.expr_optional.count(e.key)) {
      try {
        parse_operator_expr(e.value);
      } catch (const ParseError& pe) {
        rethrow_at(pe, e);
      }
      s.operators[e.key] = e.value;
    } else {
      throw ParseError(ErrorCode::unknown_key, fmt::format("unknown key '{}' for model {}", e.key, block.kind), e.line,
                       e.key_col);
    }
  }

  const auto missing = [&](const std::string& key) {
    return ParseError(ErrorCode::missing_key, fmt::format("model {} requires '{}'", block.kind, key), block.line, 1);
  };
  if (!have_t_max) throw missing("t_max");
  if (!have_samples) throw missing("samples");
  for (const auto& k : keys.numeric_required)
    if (!s.params.count(k)) throw missing(k);
  for (const auto& k : keys.expr_required)
    if (!s.operators.count(k)) throw missing(k);

  const auto find_entry = [&](const std::string& key) -> const Entry* {
    for (const auto& e : block.entries)
      if (e.key == key) return &e;
    return nullptr;
  };
  if (s.params.count("p") && s.operators.count("rho0")) {
    const Entry* e = find_entry("rho0");
    throw ParseError(ErrorCode::range_error, "set either p or rho0, not both", e->line, e->key_col);
  }
  if (s.model == ModelKind::custom && !s.params.count("p") && !s.operators.count("rho0")) throw missing("p or rho0");

  if (s.params.count("p")) {
    const double p = s.params["p"];
    if (!(p >= 0.0 && p <= 1.0)) {
      const Entry* e = find_entry("p");
      throw ParseError(ErrorCode::range_error, fmt::format("p must lie in [0, 1], got {}", p), e->line, e->value_col);
    }
  }
  if (s.params.count("delta") && !(s.params["delta"] > 0.0)) {
    const Entry* e = find_entry("delta");
    throw ParseError(ErrorCode::range_error, "delta must be positive", e->line, e->value_col);
  }
  if (s.model == ModelKind::two_level && s.params["k"] != 0.0 && !s.two_level().in_closed_form_domain()) {
    const Entry* e = find_entry("k");
    throw ParseError(ErrorCode::range_error, "a nonzero k needs |gamma/delta| > 1 (mu is undefined otherwise)", e->line,
                     e->value_col);
  }

  // Evaluate the operators now so that shape and Hermiticity errors point at the source.
  try {
    const auto ham = s.hamiltonian();
    const auto rho0 = s.initial_state();
    if (rho0.dim() != ham.dim()) {
      throw Error(ErrorCode::dimension_mismatch,
                  fmt::format("initial state has dimension {}, Hamiltonian {}", rho0.dim(), ham.dim()));
    }
  } catch (const ParseError& pe) {
    // evaluate_hermitian reports line 1; find the operator entry it came from
    for (const auto& name : {"H", "Gamma", "rho0"}) {
      if (pe.detail().rfind(std::string(name) + " ", 0) == 0 || pe.detail().find(std::string(name) + ":") == 0) {
        if (const Entry* e = find_entry(name)) rethrow_at(pe, *e);
      }
    }
    throw ParseError(pe.code(), pe.detail(), block.line, 1);
  } catch (const Error& err) {
    throw ParseError(ErrorCode::range_error, err.what(), block.line, 1);
  }
  return s;
}

}  // namespace

TwoLevelParams Scenario::two_level() const {
  if (model != ModelKind::two_level) throw Error(ErrorCode::invalid_argument, "scenario is not a two_level model");
  return TwoLevelParams{params.at("delta"), params.at("gamma"), params.at("p"), params.at("k")};
}

std::optional<double> Scenario::delta() const {
  if (auto it = params.find("delta"); it != params.end()) return it->second;
  return std::nullopt;
}

ConstantEnv Scenario::expression_env() const {
  ConstantEnv env = constants;
  for (const auto& [k, v] : params) env[k] = v;
  if (params.count("delta") && params.count("gamma")) {
    const double gt = params.at("gamma") / params.at("delta");
    if (std::abs(gt) > 1.0) env["mu"] = std::sqrt(gt * gt - 1.0);
  }
  return env;
}

namespace {

ComplexMatrix eval_slot(const Scenario& s, const std::string& slot) {
  const auto expr = parse_operator_expr(s.operators.at(slot));
  try {
    return evaluate_hermitian(expr, s.expression_env(), slot);
  } catch (const ParseError& pe) {
    if (pe.detail().rfind(slot, 0) == 0) throw;
    throw ParseError(pe.code(), slot + ": " + pe.detail(), pe.line(), pe.column());
  }
}

}  // namespace

NHHamiltonian Scenario::hamiltonian() const {
  switch (model) {
    case ModelKind::two_level: return build_hamiltonian(two_level());
    case ModelKind::const_gamma: {
      ConstGammaParams cg;
      cg.gamma0 = params.at("gamma0");
      if (operators.count("H")) {
        cg.h = eval_slot(*this, "H");
      } else {
        const std::size_t n = operators.count("rho0") ? eval_slot(*this, "rho0").dim() : 2;
        cg.h = ComplexMatrix::zero(n);
      }
      return build_hamiltonian(cg);
    }
    case ModelKind::custom: {
      NHHamiltonian ham{eval_slot(*this, "H"), eval_slot(*this, "Gamma")};
      ham.validate();
      return ham;
    }
  }
  throw Error(ErrorCode::invalid_argument, "unknown model");
}

ComplexMatrix Scenario::initial_state() const {
  if (operators.count("rho0")) {
    auto rho0 = eval_slot(*this, "rho0");
    const double tr = rho0.trace().real();
    if (std::abs(tr - 1.0) > tol::kUnitTrace) {
      throw ParseError(ErrorCode::eval_error, fmt::format("rho0: trace is {:.17g}, expected 1", tr), 1, 1);
    }
    try {
      psd_eigenvalues(rho0);
    } catch (const Error& e) {
      throw ParseError(ErrorCode::eval_error, std::string("rho0: ") + e.what(), 1, 1);
    }
    return rho0;
  }
  auto it = params.find("p");
  return nhe::initial_state(it == params.end() ? 0.5 : it->second);
}

std::vector<double> Scenario::time_grid() const { return uniform_grid(t_max, samples); }

std::vector<Scenario> parse_scenarios(std::string_view text) {
  const auto blocks = split_blocks(text);
  ConstantEnv constants;
  for (const auto& b : blocks) {
    if (b.kind != "constants") continue;
    for (const auto& e : b.entries) {
      if (kReservedNames.count(e.key)) {
        throw ParseError(ErrorCode::range_error, fmt::format("'{}' is a reserved name", e.key), e.line, e.key_col);
      }
      if (constants.count(e.key)) {
        throw ParseError(ErrorCode::duplicate_key, fmt::format("constant '{}' defined twice", e.key), e.line, e.key_col);
      }
      constants[e.key] = parse_real(e);
    }
  }
  std::vector<Scenario> out;
  for (const auto& b : blocks)
    if (b.kind != "constants") out.push_back(build(b, constants));
  if (out.empty()) throw ParseError(ErrorCode::missing_key, "no [model <name>] block found", 1, 1);
  return out;
}

Scenario parse_scenario(std::string_view text) {
  auto all = parse_scenarios(text);
  if (all.size() != 1) {
    throw ParseError(ErrorCode::syntax_error, fmt::format("expected one model block, found {}", all.size()), all[1].line, 1);
  }
  return std::move(all.front());
}

namespace {

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::string format_scenario(const Scenario& s) {
  std::string out = fmt::format("[model {}]\n", to_string(s.model));
  for (const auto& [k, v] : s.params) out += fmt::format("{} = {}\n", k, shortest(v));
  for (const auto& [k, v] : s.operators) out += fmt::format("{} = {}\n", k, v);
  out += fmt::format("t_max = {}\nsamples = {}\nintegrator = {}\n", shortest(s.t_max), s.samples, to_string(s.integrator));
  if (s.integrator == IntegratorKind::rk4) out += fmt::format("substeps = {}\n", s.substeps);
  if (s.csv) out += fmt::format("csv = {}\n", *s.csv);
  if (s.figure) out += fmt::format("figure = {}\n", to_string(*s.figure));
  return out;
}

}  // namespace nhe
