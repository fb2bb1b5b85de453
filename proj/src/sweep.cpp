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

#include "nhe/sweep.hpp"

#include <cmath>

namespace nhe {

TwoLevelProfile two_level_profile(const TwoLevelParams& params, std::span<const double> tau_grid,
                                  PropagationConfig config) {
  const auto ham = build_hamiltonian(params);
  std::vector<double> t_grid(tau_grid.size());
  for (std::size_t i = 0; i < tau_grid.size(); ++i) t_grid[i] = tau_grid[i] / params.delta;
  const auto omega0 = initial_state(params.p);

  TwoLevelProfile out{params, {}, {}};
  if (config.mode == PropagationConfig::Mode::exact) {
    out.omega = propagate_exact(ham, omega0, t_grid);
  } else {
    IntegratorConfig ic;
    // substeps per unit tau -> per unit t
    ic.substeps_per_unit = static_cast<int>(std::ceil(config.substeps_per_unit_tau * params.delta));
    out.omega = integrate(omega_rhs(ham), omega0, t_grid, ic);
  }
  out.samples = entropy_profile(out.omega, ham.gamma);
  return out;
}

std::vector<TwoLevelProfile> two_level_profiles(std::span<const TwoLevelParams> points,
                                                std::span<const double> tau_grid, PropagationConfig config,
                                                Execution exec) {
  std::vector<TwoLevelProfile> out(points.size());
  parallel_for(points.size(), exec,
               [&](std::size_t i) { out[i] = two_level_profile(points[i], tau_grid, config); });
  return out;
}

std::vector<TwoLevelParams> figure_parameter_grid(double k) {
  std::vector<TwoLevelParams> grid;
  for (double gt : kFigureGammaTilde)
    for (double p : kFigureP) grid.push_back({1.0, gt, p, k});
  return grid;
}

}  // namespace nhe
