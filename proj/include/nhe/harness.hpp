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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nhe/entropy.hpp"
#include "nhe/errors.hpp"
#include "nhe/models.hpp"
#include "nhe/parallel.hpp"
#include "nhe/scenario.hpp"

namespace nhe {

/// CLI exit status: 0 ok, 1 validation, 2 numerical or bound failure, 3 I/O.
enum class ExitStatus : int { ok = 0, validation = 1, numerical = 2, io = 3 };

ExitStatus exit_status_for(ErrorCode code);

/// Trajectory and entropy profile of a scenario; no I/O.
std::vector<EntropySample> simulate(const Scenario& scenario);

inline constexpr const char* kCsvHeader =
    "t,tau,trace_omega,s_vn,s_nh,rate_vn,rate_nh,rho_re_00,rho_re_01,rho_im_01,rho_re_11";

/// CSV text, one row per sample. Floats use %.16e; undefined rates are empty.
/// tau = delta * t when the scenario has delta, else tau = t.
std::string format_csv(const std::vector<EntropySample>& samples, std::optional<double> delta);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

struct RunOutput {
  Scenario scenario;
  std::vector<EntropySample> samples;
  std::filesystem::path csv_path;
};

/// Simulates each scenario and writes its CSV into `out_dir`. Scenarios
/// without a `csv` key are named `<default_stem>.csv`, or
/// `<default_stem>_<n>.csv` when there are several.
std::vector<RunOutput> run(const std::vector<Scenario>& scenarios, const std::filesystem::path& out_dir,
                           const std::string& default_stem = "run", Execution exec = Execution::parallel);

/// The ten two_level runs behind a figure: tau in [0, 4], 81 samples.
std::vector<Scenario> figure_scenarios(FigureId figure);

/// Scenario file text for figure_scenarios(figure).
std::string figure_scenario_text(FigureId figure);

/// Writes `<fig>.gp` next to the per-curve CSVs and returns its path.
/// Throws invalid_argument if a (gamma_tilde, p) combination is missing.
std::filesystem::path emit_figure(FigureId figure, const std::vector<RunOutput>& outputs,
                                  const std::filesystem::path& out_dir);

struct Deviation {
  std::string name;
  double max = 0.0;
  double mean = 0.0;
  std::optional<double> bound;  ///< absent for diagnostics

  bool within_bound() const { return !bound || max <= *bound; }
};

struct CompareReport {
  bool skipped = false;
  std::string notice;
  std::vector<Deviation> rows;

  bool passed() const;
  std::string to_text() const;
};

/// Numeric run vs the closed-form solutions. Out-of-domain and custom
/// scenarios are skipped with a notice.
CompareReport compare(const Scenario& scenario);

/// Large-tau S_NH slope for each k, reusing the scenario's delta, gamma and p.
std::vector<ThresholdPoint> scan_k(const Scenario& scenario, const std::vector<double>& k_values,
                                   double tau_probe = 0.0);

std::string format_scan(const Scenario& scenario, const std::vector<ThresholdPoint>& points);

}  // namespace nhe
