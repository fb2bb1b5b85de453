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

// nhentropy: scenario-driven runs, figure data, closed-form comparisons and
// gauge-multiplier scans for non-Hermitian density-operator dynamics.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "nhe/harness.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<nhe::Scenario> load(const std::string& file) {
  return nhe::parse_scenarios(nhe::read_text_file(file));
}

int cmd_run(const std::string& file, const std::string& out_dir) {
  const auto scenarios = load(file);
  const auto outputs = nhe::run(scenarios, out_dir, fs::path(file).stem().string());
  for (const auto& o : outputs) fmt::print("wrote {} ({} samples)\n", o.csv_path.string(), o.samples.size());
  return 0;
}

int cmd_figure(const std::string& name, const std::string& out_dir) {
  const auto id = nhe::parse_figure_id(name);
  if (!id) {
    fmt::print(stderr, "error: unknown figure '{}' (expected fig1..fig7)\n", name);
    return static_cast<int>(nhe::ExitStatus::validation);
  }
  const auto outputs = nhe::run(nhe::figure_scenarios(*id), out_dir, name);
  const auto script = nhe::emit_figure(*id, outputs, out_dir);
  fmt::print("wrote {} and {} curve files\n", script.string(), outputs.size());
  return 0;
}

int cmd_compare(const std::string& file) {
  const auto scenarios = load(file);
  bool ok = true;
  for (const auto& s : scenarios) {
    const auto report = nhe::compare(s);
    fmt::print("== {} block at line {}\n{}", nhe::to_string(s.model), s.line, report.to_text());
    ok = ok && (report.skipped || report.passed());
  }
  return ok ? 0 : static_cast<int>(nhe::ExitStatus::numerical);
}

int cmd_scan_k(const std::string& file, const std::vector<double>& ks, double tau_probe) {
  for (const auto& s : load(file)) {
    fmt::print("{}", nhe::format_scan(s, nhe::scan_k(s, ks, tau_probe)));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy of non-Hermitian density-operator dynamics"};
  app.require_subcommand(1);

  std::string file, out_dir = ".", figure;
  std::vector<double> ks;
  double tau_probe = 0.0;

  auto* run = app.add_subcommand("run", "Run a scenario file and write CSV output");
  run->add_option("scenario", file, "Scenario file")->required();
  run->add_option("--out", out_dir, "Output directory");

  auto* fig = app.add_subcommand("figure", "Write per-curve CSVs and a gnuplot script for fig1..fig7");
  fig->add_option("figure", figure, "Figure id")->required();
  fig->add_option("--out", out_dir, "Output directory");

  auto* cmp = app.add_subcommand("compare", "Compare numeric runs with the closed-form solutions");
  cmp->add_option("scenario", file, "Scenario file")->required();

  auto* scan = app.add_subcommand("scan-k", "Large-tau S_NH slope for several gauge multipliers k");
  scan->add_option("scenario", file, "Scenario file (two_level)")->required();
  scan->add_option("--k-list", ks, "Comma-separated k values")->required()->delimiter(',');
  scan->add_option("--tau-probe", tau_probe, "Window end in tau (default 10/mu)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(nhe::ExitStatus::validation);
  }

  try {
    if (*run) return cmd_run(file, out_dir);
    if (*fig) return cmd_figure(figure, out_dir);
    if (*cmp) return cmd_compare(file);
    if (*scan) return cmd_scan_k(file, ks, tau_probe);
  } catch (const nhe::ParseError& e) {
    fmt::print(stderr, "{}:{}\n", file, e.what());
    return static_cast<int>(nhe::exit_status_for(e.code()));
  } catch (const nhe::TimedError& e) {
    if (e.time()) {
      fmt::print(stderr, "error: {} at t = {:.6g}: {}\n", nhe::to_string(e.code()), *e.time(), e.what());
    } else {
      fmt::print(stderr, "error: {}: {}\n", nhe::to_string(e.code()), e.what());
    }
    return static_cast<int>(nhe::exit_status_for(e.code()));
  } catch (const nhe::Error& e) {
    fmt::print(stderr, "error: {}: {}\n", nhe::to_string(e.code()), e.what());
    return static_cast<int>(nhe::exit_status_for(e.code()));
  }
  return 0;
}
