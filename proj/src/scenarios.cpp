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

#include "mzcheshire/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace mzc {

namespace {

// Rows whose overlap denominator |D| falls below 10x the overlap threshold
// are emitted flagged rather than evaluated.
constexpr double kDivergedThreshold = 10.0 * kOverlapEps;

Complex evaluate_one(const Operator& A, const StateVector& pre,
                     const StateVector& post, Method method, double g,
                     long long shots, std::uint64_t seed, double* std_error) {
  switch (method) {
    case Method::Analytic:
      return weak_value_analytic(A, pre, post).value;
    case Method::MeterExact:
      return estimate_weak_value_meter(A, pre, post, g).value;
    case Method::MeterSampled: {
      const WeakValue wv = sample_weak_value(A, pre, post, g, shots, seed);
      if (std_error) *std_error = wv.std_error;
      return wv.value;
    }
  }
  throw Error("evaluate_one: bad method");
}

QuartetReport run_quartet(const std::array<ObservableTag, 4>& tags,
                          Method method, double g, long long shots,
                          std::uint64_t seed) {
  const StateVector pre = preselection_original();
  const StateVector post = postselection_original();
  QuartetReport report{tags, {}, {}, std::norm(inner(post, pre)), method};
  for (size_t k = 0; k < 4; ++k) {
    double se = 0.0;
    report.values[k] =
        evaluate_one(observable(tags[k]), pre, post, method, g, shots,
                     detail::mix_seed(seed, k), &se);
    report.std_errors[k] = se;
  }
  return report;
}

const double kNan = std::nan("");

bool magnitude_is_unit(Complex v, double tol) { return std::abs(std::abs(v) - 1.0) <= tol; }
bool magnitude_is_zero(Complex v, double tol) { return std::abs(v) <= tol; }

}  // namespace

std::string to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::OriginalCheshire:
      return "original";
    case Scenario::GrinSnarl:
      return "grinsnarl";
    case Scenario::DelayedChoice:
      return "delayed";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (!(g > 0.0 && g <= 0.1))
    throw std::invalid_argument("ExperimentConfig: g must lie in (0, 0.1]");
  if (!std::isfinite(theta) || !std::isfinite(phi))
    throw std::invalid_argument("ExperimentConfig: angles must be finite");
  if (method == Method::MeterSampled && shots < 1)
    throw std::invalid_argument(
        "ExperimentConfig: sampled runs need shots >= 1");
}

long long SweepTable::flagged_count() const {
  return std::count_if(rows.begin(), rows.end(),
                       [](const SweepRow& r) { return r.diverged; });
}

QuartetReport run_original_cheshire(Method method, double g, long long shots,
                                    std::uint64_t seed) {
  return run_quartet({ObservableTag::PiL, ObservableTag::PiR, ObservableTag::XL,
                      ObservableTag::XR},
                     method, g, shots, seed);
}

QuartetReport run_grin_snarl(Method method, double g, long long shots,
                             std::uint64_t seed) {
  return run_quartet({ObservableTag::XL, ObservableTag::XR, ObservableTag::ZL,
                      ObservableTag::ZR},
                     method, g, shots, seed);
}

SweepRow run_delayed_choice(const ExperimentConfig& cfg) {
  cfg.validate();
  SweepRow row;
  row.theta = cfg.theta;
  row.phi = cfg.phi;
  row.method = cfg.method;
  row.g = cfg.g;

  const StateVector pre = preselection_delayed(cfg.theta, cfg.phi);
  const StateVector post = postselection_delayed();
  const Complex overlap = inner(post, pre);
  row.prob = std::norm(overlap);

  if (std::abs(delayed_overlap_denominator(cfg.theta, cfg.phi)) <
      kDivergedThreshold) {
    row.diverged = true;
    row.values.fill(Complex(kNan, kNan));
    return row;
  }

  for (size_t k = 0; k < 4; ++k) {
    double se = 0.0;
    row.values[k] = evaluate_one(observable(kSweepObservables[k]), pre, post,
                                 cfg.method, cfg.g, cfg.shots,
                                 detail::mix_seed(cfg.seed, k), &se);
    row.std_errors[k] = se;
  }
  return row;
}

FlipReport flip_check() {
  ExperimentConfig a;
  a.theta = 0.0;
  a.phi = 0.0;
  ExperimentConfig b;
  b.theta = M_PI;
  b.phi = 0.0;
  return flip_check(a, b);
}

FlipReport flip_check(const ExperimentConfig& a, const ExperimentConfig& b) {
  FlipReport report;
  report.row_a = run_delayed_choice(a);
  report.row_b = run_delayed_choice(b);
  const auto& va = report.row_a.values;
  const auto& vb = report.row_b.values;

  // Sampled rows are judged at 4*stderr; exact rows at the analytic tolerance
  // (meter rows at the protocol's 5g envelope).
  const auto tol = [](const SweepRow& row, size_t k) {
    switch (row.method) {
      case Method::Analytic:
        return 1e-12;
      case Method::MeterExact:
        return 5 * row.g;
      case Method::MeterSampled:
        return 4 * row.std_errors[k];
    }
    return 1e-12;
  };

  // indices into values: 0=xL 1=xR 2=zL 3=zR
  const bool a_x_right = magnitude_is_zero(va[0], tol(report.row_a, 0)) &&
                         magnitude_is_unit(va[1], tol(report.row_a, 1));
  const bool b_x_left = magnitude_is_unit(vb[0], tol(report.row_b, 0)) &&
                        magnitude_is_zero(vb[1], tol(report.row_b, 1));
  const bool a_z_left = magnitude_is_unit(va[2], tol(report.row_a, 2)) &&
                        magnitude_is_zero(va[3], tol(report.row_a, 3));
  const bool b_z_right = magnitude_is_zero(vb[2], tol(report.row_b, 2)) &&
                         magnitude_is_unit(vb[3], tol(report.row_b, 3));

  report.x_arm_swapped = a_x_right && b_x_left;
  report.z_arm_swapped = a_z_left && b_z_right;
  report.vanishing_entries_zero =
      magnitude_is_zero(va[0], tol(report.row_a, 0)) &&
      magnitude_is_zero(va[3], tol(report.row_a, 3)) &&
      magnitude_is_zero(vb[1], tol(report.row_b, 1)) &&
      magnitude_is_zero(vb[2], tol(report.row_b, 2));
  report.flip_confirmed = report.x_arm_swapped && report.z_arm_swapped;
  report.z_right_sign_b = vb[3].real() < 0 ? -1.0 : (vb[3].real() > 0 ? 1.0 : 0.0);
  return report;
}

SweepTable sweep(const std::vector<double>& thetas,
                 const std::vector<double>& phis, Method method, double g,
                 long long shots, std::uint64_t seed) {
  if (thetas.empty() || phis.empty())
    throw std::invalid_argument("sweep: grids must be nonempty");
  SweepTable table;
  table.rows.reserve(thetas.size() * phis.size());
  std::uint64_t row_index = 0;
  for (double theta : thetas)
    for (double phi : phis) {
      ExperimentConfig cfg;
      cfg.theta = theta;
      cfg.phi = phi;
      cfg.method = method;
      cfg.g = g;
      cfg.shots = shots;
      cfg.seed = detail::mix_seed(seed, row_index++);
      table.rows.push_back(run_delayed_choice(cfg));
    }
  return table;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_header() {
  return "theta,phi,xL_re,xL_im,xR_re,xR_im,zL_re,zL_im,zR_re,zR_im,prob,flag";
}

std::string row_to_csv(const SweepRow& row) {
  std::string out = format_double(row.theta) + "," + format_double(row.phi);
  for (const Complex& v : row.values) {
    if (row.diverged) {
      out += ",,";
    } else {
      out += "," + format_double(v.real()) + "," + format_double(v.imag());
    }
  }
  out += "," + format_double(row.prob);
  out += row.diverged ? ",diverged" : ",ok";
  return out;
}

namespace {

nlohmann::ordered_json row_json(const SweepRow& row) {
  nlohmann::ordered_json j;
  j["theta"] = row.theta;
  j["phi"] = row.phi;
  static const char* names[] = {"xL", "xR", "zL", "zR"};
  for (size_t k = 0; k < 4; ++k) {
    const std::string re = std::string(names[k]) + "_re";
    const std::string im = std::string(names[k]) + "_im";
    if (row.diverged) {
      j[re] = nullptr;
      j[im] = nullptr;
    } else {
      j[re] = row.values[k].real();
      j[im] = row.values[k].imag();
    }
  }
  j["prob"] = row.prob;
  j["flag"] = row.diverged ? "diverged" : "ok";
  j["method"] = to_string(row.method);
  if (row.method == Method::MeterSampled && !row.diverged) {
    for (size_t k = 0; k < 4; ++k)
      j[std::string(names[k]) + "_stderr"] = row.std_errors[k];
  }
  return j;
}

}  // namespace

std::string row_to_json_string(const SweepRow& row) { return row_json(row).dump(); }

void write_csv(std::ostream& out, const SweepTable& table) {
  out << csv_header() << "\n";
  for (const SweepRow& row : table.rows) out << row_to_csv(row) << "\n";
}

void write_json(std::ostream& out, const SweepTable& table) {
  nlohmann::ordered_json j;
  j["rows"] = nlohmann::ordered_json::array();
  for (const SweepRow& row : table.rows) j["rows"].push_back(row_json(row));
  out << j.dump(2) << "\n";
}

std::string quartet_to_csv(const QuartetReport& report) {
  std::string out = "observable,value_re,value_im,stderr,prob,method\n";
  for (size_t k = 0; k < 4; ++k) {
    out += to_string(report.tags[k]);
    out += "," + format_double(report.values[k].real());
    out += "," + format_double(report.values[k].imag());
    out += "," + format_double(report.std_errors[k]);
    out += "," + format_double(report.prob);
    out += "," + to_string(report.method) + "\n";
  }
  return out;
}

std::string quartet_to_json_string(const QuartetReport& report,
                                   Scenario scenario) {
  nlohmann::ordered_json j;
  j["scenario"] = to_string(scenario);
  j["method"] = to_string(report.method);
  j["prob"] = report.prob;
  for (size_t k = 0; k < 4; ++k) {
    const std::string name = to_string(report.tags[k]);
    j[name + "_re"] = report.values[k].real();
    j[name + "_im"] = report.values[k].imag();
    if (report.method == Method::MeterSampled)
      j[name + "_stderr"] = report.std_errors[k];
  }
  return j.dump();
}

}  // namespace mzc
