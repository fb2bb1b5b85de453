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

#include "nhe/harness.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "nhe/dynamics.hpp"
#include "nhe/linalg.hpp"
#include "nhe/sweep.hpp"

namespace nhe {

namespace fs = std::filesystem;

ExitStatus exit_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::io_error: return ExitStatus::io;
    case ErrorCode::invalid_argument:
    case ErrorCode::lex_error:
    case ErrorCode::syntax_error:
    case ErrorCode::unknown_key:
    case ErrorCode::missing_key:
    case ErrorCode::duplicate_key:
    case ErrorCode::range_error:
    case ErrorCode::eval_error:
    case ErrorCode::out_of_domain:
    case ErrorCode::not_hermitian:
    case ErrorCode::dimension_mismatch:
    case ErrorCode::inconsistent_pair: return ExitStatus::validation;
    default: return ExitStatus::numerical;
  }
}

std::vector<EntropySample> simulate(const Scenario& scenario) {
  const auto ham = scenario.hamiltonian();
  const auto rho0 = scenario.initial_state();
  const auto grid = scenario.time_grid();
  if (scenario.integrator == IntegratorKind::exact) {
    return entropy_profile(propagate_exact(ham, rho0, grid), ham.gamma);
  }
  IntegratorConfig config;
  config.method = IntegratorConfig::Method::rk4_substeps;
  const double per_unit_t = scenario.substeps * scenario.delta().value_or(1.0);
  config.substeps_per_unit = static_cast<int>(std::ceil(per_unit_t - 1e-9));
  return entropy_profile(integrate(omega_rhs(ham), rho0, grid, config), ham.gamma);
}

std::string format_csv(const std::vector<EntropySample>& samples, std::optional<double> delta) {
  std::string out = kCsvHeader;
  out += '\n';
  const auto num = [](double v) { return fmt::format("{:.16e}", v); };
  const auto opt = [&](const std::optional<double>& v) { return v ? num(*v) : std::string(); };
  for (const auto& s : samples) {
    const bool two = s.rho.dim() >= 2;
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", num(s.time), num(s.time * delta.value_or(1.0)),
                       num(s.trace_omega), num(s.s_vn), num(s.s_nh), opt(s.rate_vn), opt(s.rate_nh),
                       num(s.rho(0, 0).real()), two ? num(s.rho(0, 1).real()) : "", two ? num(s.rho(0, 1).imag()) : "",
                       two ? num(s.rho(1, 1).real()) : "");
  }
  return out;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::io_error, fmt::format("cannot open '{}' for writing", path.string()));
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw Error(ErrorCode::io_error, fmt::format("write to '{}' failed", path.string()));
}

std::string read_text_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::io_error, fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<RunOutput> run(const std::vector<Scenario>& scenarios, const fs::path& out_dir,
                           const std::string& default_stem, Execution exec) {
  std::vector<RunOutput> outputs(scenarios.size());
  std::set<fs::path> seen;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const auto& s = scenarios[i];
    std::string name = s.csv ? *s.csv
                       : scenarios.size() == 1 ? default_stem + ".csv"
                                               : fmt::format("{}_{}.csv", default_stem, i + 1);
    outputs[i].scenario = s;
    outputs[i].csv_path = out_dir / name;
    if (!seen.insert(outputs[i].csv_path.lexically_normal()).second) {
      throw Error(ErrorCode::invalid_argument,
                  fmt::format("two scenarios write to '{}' (block on line {})", name, s.line));
    }
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::io_error, fmt::format("cannot create '{}': {}", out_dir.string(), ec.message()));

  parallel_for(scenarios.size(), exec, [&](std::size_t i) {
    auto& o = outputs[i];
    o.samples = simulate(o.scenario);
    write_text_file(o.csv_path, format_csv(o.samples, o.scenario.delta()));
  });
  return outputs;
}

namespace {

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

struct FigureSpec {
  double k;
  const char* column;  // CSV column plotted against tau
  int column_index;    // 1-based for gnuplot
  const char* ylabel;
};

FigureSpec figure_spec(FigureId f) {
  switch (f) {
    case FigureId::fig1: return {0.0, "s_vn", 4, "S_{vN}"};
    case FigureId::fig2: return {0.0, "s_nh", 5, "S_{NH}"};
    case FigureId::fig3: return {0.0, "trace_omega", 3, "Tr {/Symbol W}"};
    case FigureId::fig4: return {1.0, "s_nh", 5, "S_{NH}"};
    case FigureId::fig5: return {1.0, "trace_omega", 3, "Tr {/Symbol W}"};
    case FigureId::fig6: return {1.5, "s_nh", 5, "S_{NH}"};
    case FigureId::fig7: return {1.5, "trace_omega", 3, "Tr {/Symbol W}"};
  }
  throw Error(ErrorCode::invalid_argument, "unknown figure");
}

std::string curve_csv_name(FigureId f, double gt, double p) {
  return fmt::format("{}_gt{}_p{}.csv", to_string(f), shortest(gt), shortest(p));
}

// solid, dashed, dash-dotted, dotted, dash-double-dotted
constexpr const char* kDashTypes[] = {"1", "\"_ \"", "\"_. \"", "\". \"", "\"_.. \""};
constexpr const char* kPLabels[] = {"0.01", "1/4", "1/2", "3/4", "0.99"};

}  // namespace

std::vector<Scenario> figure_scenarios(FigureId figure) {
  const auto spec = figure_spec(figure);
  std::vector<Scenario> out;
  for (const auto& params : figure_parameter_grid(spec.k)) {
    Scenario s;
    s.model = ModelKind::two_level;
    s.params = {{"delta", params.delta}, {"gamma", params.gamma}, {"p", params.p}, {"k", params.k}};
    s.t_max = 4.0 / params.delta;
    s.samples = 81;
    s.integrator = IntegratorKind::exact;
    s.csv = curve_csv_name(figure, params.gamma_tilde(), params.p);
    s.figure = figure;
    out.push_back(std::move(s));
  }
  return out;
}

std::string figure_scenario_text(FigureId figure) {
  std::string out;
  for (const auto& s : figure_scenarios(figure)) {
    if (!out.empty()) out += '\n';
    out += format_scenario(s);
  }
  return out;
}

fs::path emit_figure(FigureId figure, const std::vector<RunOutput>& outputs, const fs::path& out_dir) {
  const auto spec = figure_spec(figure);
  std::string script = fmt::format(
      "# {}: {} vs tau, k = {}\n"
      "set terminal pngcairo size 800,900 enhanced\n"
      "set output '{}.png'\n"
      "set datafile separator ','\n"
      "set multiplot layout 2,1\n"
      "set xlabel '{{/Symbol t}}'\n"
      "set ylabel '{}'\n"
      "set key outside right\n",
      to_string(figure), spec.column, shortest(spec.k), to_string(figure), spec.ylabel);

  for (double gt : kFigureGammaTilde) {
    script += fmt::format("set title '{{/Symbol g}}~ = {}'\nplot \\\n", shortest(gt));
    for (std::size_t j = 0; j < std::size(kFigureP); ++j) {
      const double p = kFigureP[j];
      const auto match = std::find_if(outputs.begin(), outputs.end(), [&](const RunOutput& o) {
        if (o.scenario.model != ModelKind::two_level) return false;
        const auto tl = o.scenario.two_level();
        return tl.gamma_tilde() == gt && tl.p == p && tl.k == spec.k;
      });
      if (match == outputs.end()) {
        throw Error(ErrorCode::invalid_argument,
                    fmt::format("{} needs gamma_tilde = {}, p = {}, k = {}; no such run", to_string(figure),
                                shortest(gt), shortest(p), shortest(spec.k)));
      }
      script += fmt::format("  '{}' every ::1 using 2:{} with lines lw 2 lc 'black' dt {} title 'p = {}'{}\n",
                            match->csv_path.filename().string(), spec.column_index, kDashTypes[j], kPLabels[j],
                            j + 1 < std::size(kFigureP) ? ", \\" : "");
    }
  }
  script += "unset multiplot\n";
  const fs::path path = out_dir / (to_string(figure) + ".gp");
  write_text_file(path, script);
  return path;
}

bool CompareReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const Deviation& d) { return d.within_bound(); });
}

std::string CompareReport::to_text() const {
  if (skipped) return fmt::format("SKIPPED: {}\n", notice);
  std::string out = fmt::format("{:<36} {:>12} {:>12} {:>10}  {}\n", "quantity", "max", "mean", "bound", "status");
  for (const auto& d : rows) {
    out += fmt::format("{:<36} {:>12.3e} {:>12.3e} {:>10}  {}\n", d.name, d.max, d.mean,
                       d.bound ? fmt::format("{:.0e}", *d.bound) : std::string("-"),
                       !d.bound ? "info" : d.within_bound() ? "ok" : "EXCEEDED");
  }
  if (!notice.empty()) out += notice + '\n';
  out += passed() ? "result: all bounds met\n" : "result: bound exceeded\n";
  return out;
}

namespace {

class Accumulator {
 public:
  void add(double v) {
    max_ = std::max(max_, v);
    sum_ += v;
    ++n_;
  }
  Deviation finish(std::string name, std::optional<double> bound) const {
    return {std::move(name), max_, n_ ? sum_ / static_cast<double>(n_) : 0.0, bound};
  }

 private:
  double max_ = 0.0;
  double sum_ = 0.0;
  std::size_t n_ = 0;
};

CompareReport compare_two_level(const Scenario& scenario) {
  CompareReport report;
  const auto params = scenario.two_level();
  if (!params.in_closed_form_domain()) {
    report.skipped = true;
    report.notice = fmt::format("gamma_tilde = {} is outside closed-form domain (|gamma_tilde| > 1)",
                                shortest(params.gamma_tilde()));
    return report;
  }
  const auto ham = scenario.hamiltonian();
  const auto grid = scenario.time_grid();
  const auto samples = simulate(scenario);

  // numeric Omega trajectory matching the scenario's integrator
  Trajectory omega;
  if (scenario.integrator == IntegratorKind::exact) {
    omega = propagate_exact(ham, scenario.initial_state(), grid);
  } else {
    IntegratorConfig config;
    config.substeps_per_unit = static_cast<int>(std::ceil(scenario.substeps * params.delta - 1e-9));
    omega = integrate(omega_rhs(ham), scenario.initial_state(), grid, config);
  }

  Accumulator om_abs, om_scaled, rho_dev, tr_rel, svn_dev, snh_dev, lit_dev, f12;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double tau = params.delta * grid[i];
    const auto closed = omega_closed(params, tau);
    const double d = max_abs_diff(omega.states[i].state, closed);
    om_abs.add(d);
    om_scaled.add(d / std::max(1.0, closed.max_abs()));
    rho_dev.add(max_abs_diff(samples[i].rho, rho_closed(params, tau)));
    const double tr = trace_closed(params, tau);
    tr_rel.add(std::abs(samples[i].trace_omega - tr) / std::abs(tr));
    const double svn = svn_closed(params, tau);
    svn_dev.add(std::abs(samples[i].s_vn - svn));
    snh_dev.add(std::abs(samples[i].s_nh - snh_closed(params, tau)));
    lit_dev.add(std::abs(svn_closed_literal(params, tau) - svn));
    const auto f = f1_f2(params, tau);
    f12.add(std::abs(f.f2 - f.f1) / std::abs(f.f1));
  }
  report.rows.push_back(om_abs.finish("omega abs", std::nullopt));
  report.rows.push_back(om_scaled.finish("omega scaled", 1e-8));
  report.rows.push_back(rho_dev.finish("rho abs", 1e-8));
  report.rows.push_back(tr_rel.finish("trace_omega rel", 1e-8));
  report.rows.push_back(svn_dev.finish("s_vn abs", 1e-8));
  report.rows.push_back(snh_dev.finish("s_nh abs", 1e-8));
  report.rows.push_back(lit_dev.finish("s_vn two-term formula", 1e-10));
  report.rows.push_back(f12.finish("F2 vs F1 rel (diagnostic)", std::nullopt));

  if (params.k != 0.0) {
    Scenario base = scenario;
    base.params["k"] = 0.0;
    const auto base_samples = simulate(base);
    const double mu = params.mu();
    Accumulator gauge;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double tau = params.delta * grid[i];
      gauge.add(std::abs((samples[i].s_nh - base_samples[i].s_nh) - 2.0 * params.k * mu * tau));
    }
    report.rows.push_back(gauge.finish(fmt::format("s_nh(k={}) - s_nh(k=0) - 2k mu tau", shortest(params.k)), 1e-9));
  }
  return report;
}

CompareReport compare_const_gamma(const Scenario& scenario) {
  CompareReport report;
  const auto ham = scenario.hamiltonian();
  ConstGammaParams cg{scenario.params.at("gamma0"), ham.h, s_vn(scenario.initial_state())};
  const auto samples = simulate(scenario);
  Accumulator tr_rel, svn_dev, snh_dev;
  for (const auto& s : samples) {
    const auto exact = const_gamma_solution(cg, s.time);
    tr_rel.add(std::abs(s.trace_omega - exact.trace_omega) / exact.trace_omega);
    svn_dev.add(std::abs(s.s_vn - exact.s_vn));
    snh_dev.add(std::abs(s.s_nh - exact.s_nh));
  }
  report.rows.push_back(tr_rel.finish("trace_omega rel", 1e-8));
  report.rows.push_back(svn_dev.finish("s_vn abs", 1e-10));
  report.rows.push_back(snh_dev.finish("s_nh abs", 1e-8));
  return report;
}

}  // namespace

CompareReport compare(const Scenario& scenario) {
  switch (scenario.model) {
    case ModelKind::two_level: return compare_two_level(scenario);
    case ModelKind::const_gamma: return compare_const_gamma(scenario);
    case ModelKind::custom: break;
  }
  CompareReport report;
  report.skipped = true;
  report.notice = "custom models have no closed-form solution to compare against";
  return report;
}

std::vector<ThresholdPoint> scan_k(const Scenario& scenario, const std::vector<double>& k_values, double tau_probe) {
  if (scenario.model != ModelKind::two_level) {
    throw Error(ErrorCode::invalid_argument, "scan-k needs a two_level scenario");
  }
  if (k_values.empty()) throw Error(ErrorCode::invalid_argument, "scan-k needs at least one k value");
  return threshold_scan(scenario.two_level(), k_values, tau_probe);
}

std::string format_scan(const Scenario& scenario, const std::vector<ThresholdPoint>& points) {
  const double mu = scenario.two_level().mu();
  std::string out = fmt::format("# mu = {:.10g}\n{:>10} {:>16} {:>12} {:>16}\n", mu, "k", "slope", "slope/mu", "s_nh_final");
  for (const auto& p : points) {
    out += fmt::format("{:>10.6g} {:>16.8e} {:>12.6f} {:>16.8e}\n", p.k, p.slope, p.slope / mu, p.final_value);
  }
  return out;
}

}  // namespace nhe
