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

#include <span>
#include <vector>

#include "nhe/dynamics.hpp"
#include "nhe/entropy.hpp"
#include "nhe/models.hpp"
#include "nhe/parallel.hpp"

namespace nhe {

/// How a two-level trajectory is produced.
struct PropagationConfig {
  enum class Mode { exact, rk4 };
  Mode mode = Mode::exact;
  int substeps_per_unit_tau = kDefaultSubstepsPerUnit;
};

struct TwoLevelProfile {
  TwoLevelParams params;
  Trajectory omega;
  std::vector<EntropySample> samples;
};

/// Omega trajectory and entropy profile of one parameter point on a tau grid.
TwoLevelProfile two_level_profile(const TwoLevelParams& params, std::span<const double> tau_grid,
                                  PropagationConfig config = {});

/// Batch of independent points. Execution::serial is the reference;
/// Execution::parallel distributes points over OpenMP threads.
std::vector<TwoLevelProfile> two_level_profiles(std::span<const TwoLevelParams> points,
                                                std::span<const double> tau_grid,
                                                PropagationConfig config = {},
                                                Execution exec = Execution::parallel);

/// The ten curves drawn in every figure: gamma_tilde in {-2, 2} (outer) and
/// p in {0.01, 1/4, 1/2, 3/4, 0.99} (inner), delta = 1, gauge multiplier k.
std::vector<TwoLevelParams> figure_parameter_grid(double k);

inline constexpr double kFigureGammaTilde[] = {-2.0, 2.0};
inline constexpr double kFigureP[] = {0.01, 0.25, 0.5, 0.75, 0.99};

}  // namespace nhe
