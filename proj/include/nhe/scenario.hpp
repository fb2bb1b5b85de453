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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nhe/dynamics.hpp"
#include "nhe/expr.hpp"
#include "nhe/models.hpp"
#include "nhe/operators.hpp"

namespace nhe {

enum class ModelKind { const_gamma, two_level, custom };
enum class IntegratorKind { exact, rk4 };
enum class FigureId { fig1 = 1, fig2, fig3, fig4, fig5, fig6, fig7 };

std::string_view to_string(ModelKind m);
std::string_view to_string(IntegratorKind m);
std::string to_string(FigureId f);
std::optional<FigureId> parse_figure_id(std::string_view text);

/// One simulation run described by a `[model <name>]` block.
///
/// Times are raw t. When the model has a tunneling frequency `delta`, the
/// reported tau is delta * t and `substeps` counts RK4 steps per unit tau;
/// otherwise per unit t.
struct Scenario {
  ModelKind model = ModelKind::two_level;
  std::map<std::string, double> params;          ///< numeric model keys (delta, gamma, p, k, gamma0)
  std::map<std::string, std::string> operators;  ///< H, Gamma, rho0 source text
  ConstantEnv constants;                         ///< from the [constants] block
  double t_max = 0.0;
  std::size_t samples = 0;
  IntegratorKind integrator = IntegratorKind::exact;
  int substeps = kDefaultSubstepsPerUnit;
  std::optional<std::string> csv;
  std::optional<FigureId> figure;
  std::size_t line = 0;  ///< line of the block header

  /// The two_level parameters (two_level model only).
  TwoLevelParams two_level() const;
  /// delta, when the model defines one.
  std::optional<double> delta() const;
  /// Names visible to operator expressions.
  ConstantEnv expression_env() const;
  NHHamiltonian hamiltonian() const;
  ComplexMatrix initial_state() const;
  std::vector<double> time_grid() const;
};

/// Parses every `[model ...]` block of a scenario file. Throws ParseError
/// with the line and column of the first problem.
std::vector<Scenario> parse_scenarios(std::string_view text);

/// parse_scenarios for text holding exactly one model block.
Scenario parse_scenario(std::string_view text);

/// Scenario text that parses back to an equivalent scenario.
std::string format_scenario(const Scenario& s);

}  // namespace nhe
