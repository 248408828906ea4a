// Copyright 2026 The mzcheshire Authors
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

// mzi — batch front-end for the weak-measurement interferometer simulator.
//
// Subcommands:
//   run <original|grinsnarl|delayed>   one preset / one (theta, phi) point
//   sweep                              (theta, phi) grid -> CSV/JSON table
//   exec <file.mzi>                    run a circuit-description file
//
// Exit codes: 0 success, 1 error, 2 when divergence-flagged results were
// emitted. Identical flags and seed produce byte-identical output.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mzcheshire/dsl.hpp"
#include "mzcheshire/scenarios.hpp"

namespace {

using namespace mzc;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitDiverged = 2;

Method method_from_name(const std::string& name) {
  if (name == "analytic") return Method::Analytic;
  if (name == "meter") return Method::MeterExact;
  if (name == "sample") return Method::MeterSampled;
  throw std::invalid_argument("unknown method '" + name + "'");
}

// Relative output paths are placed under $MZI_OUTPUT_DIR when it is set.
std::string resolve_output_path(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("MZI_OUTPUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  std::string base(dir);
  if (base.back() != '/') base += '/';
  return base + path;
}

// Inclusive linspace from a "start:stop:count" spec; count == 1 yields
// {start}. Angles take the same pi-expressions as the circuit language
// (e.g. 0:2pi:13).
std::vector<double> parse_grid_spec(const std::string& spec) {
  const size_t c1 = spec.find(':');
  const size_t c2 = c1 == std::string::npos ? std::string::npos
                                            : spec.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw std::invalid_argument("grid spec '" + spec +
                                "' is not start:stop:count");
  const double start = parse_angle(spec.substr(0, c1));
  const double stop = parse_angle(spec.substr(c1 + 1, c2 - c1 - 1));
  const long count = std::stol(spec.substr(c2 + 1));
  if (count < 1)
    throw std::invalid_argument("grid spec '" + spec + "': count must be >= 1");
  std::vector<double> points;
  points.reserve(static_cast<size_t>(count));
  if (count == 1) {
    points.push_back(start);
    return points;
  }
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (long k = 0; k < count; ++k)
    points.push_back(start + step * static_cast<double>(k));
  return points;
}

void emit(const std::string& content, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << content;
    return;
  }
  const std::string resolved = resolve_output_path(output_path);
  std::ofstream out(resolved, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + resolved + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write to '" + resolved + "' failed");
}

struct RunOptions {
  std::string scenario;
  std::string theta = "0";
  std::string phi = "0";
  std::string method = "analytic";
  std::string g = "1e-3";
  long long shots = 0;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string output;
};

int cmd_run(const RunOptions& opt) {
  const Method method = method_from_name(opt.method);
  const long long shots =
      (method == Method::MeterSampled && opt.shots == 0) ? 100000 : opt.shots;

  if (opt.scenario == "delayed") {
    ExperimentConfig cfg;
    cfg.scenario = Scenario::DelayedChoice;
    cfg.theta = parse_angle(opt.theta);
    cfg.phi = parse_angle(opt.phi);
    cfg.g = parse_angle(opt.g);
    cfg.method = method;
    cfg.shots = shots;
    cfg.seed = opt.seed;
    const SweepRow row = run_delayed_choice(cfg);
    if (opt.format == "csv")
      emit(csv_header() + "\n" + row_to_csv(row) + "\n", opt.output);
    else
      emit(row_to_json_string(row) + "\n", opt.output);
    return row.diverged ? kExitDiverged : kExitOk;
  }

  const Scenario scenario = opt.scenario == "original"
                                ? Scenario::OriginalCheshire
                                : Scenario::GrinSnarl;
  const QuartetReport report =
      scenario == Scenario::OriginalCheshire
          ? run_original_cheshire(method, parse_angle(opt.g), shots, opt.seed)
          : run_grin_snarl(method, parse_angle(opt.g), shots, opt.seed);
  if (opt.format == "csv")
    emit(quartet_to_csv(report), opt.output);
  else
    emit(quartet_to_json_string(report, scenario) + "\n", opt.output);
  return kExitOk;
}

struct SweepOptions {
  std::string theta_spec;
  std::string phi_spec;
  std::string method = "analytic";
  std::string g = "1e-3";
  long long shots = 0;
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string output;
};

int cmd_sweep(const SweepOptions& opt) {
  const Method method = method_from_name(opt.method);
  const long long shots =
      (method == Method::MeterSampled && opt.shots == 0) ? 100000 : opt.shots;
  const SweepTable table =
      sweep(parse_grid_spec(opt.theta_spec), parse_grid_spec(opt.phi_spec),
            method, parse_angle(opt.g), shots, opt.seed);

  std::ostringstream body;
  if (opt.format == "csv")
    write_csv(body, table);
  else
    write_json(body, table);
  emit(body.str(), opt.output);

  const std::string summary =
      "rows=" + std::to_string(table.rows.size()) +
      " flagged=" + std::to_string(table.flagged_count()) + "\n";
  // keep stdout clean for data when the table itself goes to stdout
  (opt.output.empty() ? std::cerr : std::cout) << summary;
  return table.flagged_count() > 0 ? kExitDiverged : kExitOk;
}

struct ExecOptions {
  std::string path;
  std::string format = "json";
  std::string output;
};

int cmd_exec(const ExecOptions& opt) {
  std::ifstream in(opt.path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read '" << opt.path << "'\n";
    return kExitError;
  }
  std::ostringstream source;
  source << in.rdbuf();

  const CircuitProgram program = parse(source.str());
  const std::vector<MeasureResult> results = compile_and_run(program);

  std::string body;
  if (opt.format == "csv") {
    body = measure_results_csv_header() + "\n";
    for (const auto& r : results) body += measure_result_to_csv(r) + "\n";
  } else {
    for (const auto& r : results) body += measure_result_to_json_string(r) + "\n";
  }
  emit(body, opt.output);

  for (const auto& r : results)
    if (r.diverged) return kExitDiverged;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weak-measurement Mach-Zehnder interferometer simulator"};
  app.require_subcommand(1);

  RunOptions run_opt;
  CLI::App* run = app.add_subcommand(
      "run", "evaluate one preset scenario or one (theta, phi) point");
  run->add_option("scenario", run_opt.scenario,
                  "original | grinsnarl | delayed")
      ->required()
      ->check(CLI::IsMember({"original", "grinsnarl", "delayed"}));
  run->add_option("--theta", run_opt.theta, "tuner angle (pi-expression)");
  run->add_option("--phi", run_opt.phi, "path phase (pi-expression)");
  run->add_option("--method", run_opt.method, "analytic | meter | sample")
      ->check(CLI::IsMember({"analytic", "meter", "sample"}));
  run->add_option("--g", run_opt.g, "coupling strength in (0, 0.1]");
  run->add_option("--shots", run_opt.shots, "trials for method=sample");
  run->add_option("--seed", run_opt.seed, "RNG seed for method=sample");
  run->add_option("--format", run_opt.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--output", run_opt.output,
                  "write to file instead of stdout ($MZI_OUTPUT_DIR-relative)");

  SweepOptions sweep_opt;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "tabulate weak values over a (theta, phi) grid");
  sweep->add_option("--theta", sweep_opt.theta_spec,
                    "grid spec start:stop:count, e.g. 0:2pi:13")
      ->required();
  sweep->add_option("--phi", sweep_opt.phi_spec, "grid spec start:stop:count")
      ->required();
  sweep->add_option("--method", sweep_opt.method, "analytic | meter | sample")
      ->check(CLI::IsMember({"analytic", "meter", "sample"}));
  sweep->add_option("--g", sweep_opt.g, "coupling strength in (0, 0.1]");
  sweep->add_option("--shots", sweep_opt.shots, "trials for method=sample");
  sweep->add_option("--seed", sweep_opt.seed, "base RNG seed");
  sweep->add_option("--format", sweep_opt.format, "csv | json")
      ->check(CLI::IsMember({"json", "csv"}));
  sweep->add_option("--output", sweep_opt.output,
                    "write to file instead of stdout ($MZI_OUTPUT_DIR-relative)");

  ExecOptions exec_opt;
  CLI::App* exec = app.add_subcommand("exec", "run a .mzi circuit file");
  exec->add_option("file", exec_opt.path, "circuit description file")->required();
  exec->add_option("--format", exec_opt.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  exec->add_option("--output", exec_opt.output,
                   "write to file instead of stdout ($MZI_OUTPUT_DIR-relative)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (run->parsed()) return cmd_run(run_opt);
    if (sweep->parsed()) return cmd_sweep(sweep_opt);
    if (exec->parsed()) return cmd_exec(exec_opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
