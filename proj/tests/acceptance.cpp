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

// Acceptance suite: one pass/fail line per criterion, each pinned to its
// stated tolerance. The exit code is the number of failed criteria.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "mzcheshire/dsl.hpp"
#include "mzcheshire/scenarios.hpp"
#include "oracles.hpp"

using namespace mzc;

namespace {

const Complex kI{0.0, 1.0};

struct Criterion {
  int number;
  bool passed;
  std::string summary;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string run_cli_capture(const std::string& args, int* exit_code) {
  const std::string cmd = std::string(MZI_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    *exit_code = -1;
    return {};
  }
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

char fmt_buf[256];
std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
  std::snprintf(fmt_buf, sizeof fmt_buf, pattern, a, b, c);
  return fmt_buf;
}

// ---------------------------------------------------------------------------
// criterion 1: the original-scheme weak values reproduce the six integers
Criterion criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  const StateVector pre = preselection_original();
  const StateVector post = postselection_original();
  const std::pair<ObservableTag, Complex> expected[] = {
      {ObservableTag::PiL, 1.0}, {ObservableTag::PiR, 0.0},
      {ObservableTag::XL, 0.0},  {ObservableTag::XR, 1.0},
      {ObservableTag::ZL, 1.0},  {ObservableTag::ZR, 0.0}};
  double worst = 0.0;
  for (const auto& [tag, target] : expected) {
    const Complex got = weak_value_analytic(observable(tag), pre, post).value;
    worst = std::max(worst, std::abs(got - target));
  }
  const double elapsed = seconds_since(start);
  const bool ok = worst <= 1e-12 && elapsed < 1.0;
  return {1, ok,
          fmt("six analytic values, worst |err| = %.2e (tol 1e-12), %.2f s",
              worst, elapsed)};
}

// criterion 2: closed forms equal the quotient route on 200 random settings
Criterion criterion_2() {
  const auto start = std::chrono::steady_clock::now();
  oracle::Rng rng(0xC2EB7);
  const StateVector post = postselection_delayed();
  double worst = 0.0;
  int accepted = 0;
  while (accepted < 200) {
    const double theta = rng.uniform(0, 2 * M_PI);
    const double phi = rng.uniform(0, 2 * M_PI);
    if (std::abs(delayed_overlap_denominator(theta, phi)) <= 0.1) continue;
    ++accepted;
    const StateVector pre = preselection_delayed(theta, phi);
    for (ObservableTag tag : {ObservableTag::XL, ObservableTag::XR,
                              ObservableTag::ZL, ObservableTag::ZR}) {
      const Complex closed = closed_form_delayed(tag, theta, phi);
      const Complex quotient =
          weak_value_analytic(observable(tag), pre, post).value;
      worst = std::max(worst, std::abs(closed - quotient));
    }
  }
  const double elapsed = seconds_since(start);
  const bool ok = worst <= 1e-12 && elapsed < 5.0;
  return {2, ok,
          fmt("200 settings x 4 observables, worst |closed - quotient| = "
              "%.2e (tol 1e-12), %.2f s",
              worst, elapsed)};
}

// criterion 3: the paper's special tuner settings
Criterion criterion_3() {
  double worst = 0.0;
  const auto track = [&](Complex got, Complex want) {
    worst = std::max(worst, std::abs(got - want));
  };
  for (double phi : {0.0, M_PI / 3, 1.7}) {
    track(closed_form_delayed(ObservableTag::ZL, M_PI, phi), 0.0);
    track(closed_form_delayed(ObservableTag::ZR, M_PI, phi), -1.0);
  }
  track(closed_form_delayed(ObservableTag::XL, M_PI, 0.0), 1.0);
  track(closed_form_delayed(ObservableTag::XR, M_PI, 0.0), 0.0);
  track(closed_form_delayed(ObservableTag::XL, 0.0, 0.0), 0.0);
  track(closed_form_delayed(ObservableTag::XR, 0.0, 0.0), 1.0);
  track(closed_form_delayed(ObservableTag::ZL, 0.0, 0.0), 1.0);
  track(closed_form_delayed(ObservableTag::ZR, 0.0, 0.0), 0.0);
  return {3, worst <= 1e-12,
          fmt("special cases, worst |err| = %.2e (tol 1e-12)", worst)};
}

// criterion 4: meter-protocol convergence across g decades
Criterion criterion_4() {
  const StateVector post = postselection_delayed();
  const double gs[] = {1e-2, 1e-3, 1e-4};
  double max_err[3] = {0.0, 0.0, 0.0};
  bool envelope_ok = true;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const double theta = 0.4 + 0.6 * i;  // 0.4 .. 2.8
      const double phi = 0.0 + 0.6 * j;    // 0.0 .. 2.4
      const StateVector pre = preselection_delayed(theta, phi);
      for (ObservableTag tag : {ObservableTag::XL, ObservableTag::XR,
                                ObservableTag::ZL, ObservableTag::ZR}) {
        const Complex truth = closed_form_delayed(tag, theta, phi);
        for (int k = 0; k < 3; ++k) {
          const Complex est =
              estimate_weak_value_meter(observable(tag), pre, post, gs[k]).value;
          const double err = std::abs(est - truth);
          max_err[k] = std::max(max_err[k], err);
          if (err > 5 * gs[k]) envelope_ok = false;
        }
      }
    }
  const double ratio_a = max_err[0] / max_err[1];
  const double ratio_b = max_err[1] / max_err[2];
  const bool ratios_ok =
      ratio_a >= 5.0 && ratio_a <= 20.0 && ratio_b >= 5.0 && ratio_b <= 20.0;
  return {4, envelope_ok && ratios_ok,
          std::string(envelope_ok ? "envelope |err| <= 5g held; "
                                  : "envelope |err| <= 5g BROKEN; ") +
              fmt("successive-g error ratios %.1f and %.1f vs required [5,20] "
                  "(the protocol bias is O(g^2), so ratios sit near 100)",
                  ratio_a, ratio_b)};
}

// criterion 5: statistical mode on the flip pair
Criterion criterion_5() {
  const auto start = std::chrono::steady_clock::now();
  const double g = 1e-2;
  const long long shots = 1000000;
  const std::uint64_t seed = 20260810;
  const StateVector post = postselection_delayed();
  bool within_4se = true;
  double worst_se = 0.0;
  int salt = 0;
  for (double theta : {0.0, M_PI}) {
    const StateVector pre = preselection_delayed(theta, 0.0);
    for (ObservableTag tag : {ObservableTag::XL, ObservableTag::XR,
                              ObservableTag::ZL, ObservableTag::ZR}) {
      const WeakValue est = sample_weak_value(
          observable(tag), pre, post, g, shots, detail::mix_seed(seed, salt++));
      const Complex truth = closed_form_delayed(tag, theta, 0.0);
      if (std::abs(est.value - truth) > 4 * est.std_error) within_4se = false;
      worst_se = std::max(worst_se, est.std_error);
    }
  }
  const double elapsed = seconds_since(start);
  const bool se_ok = worst_se < 0.05;
  const bool ok = within_4se && se_ok && elapsed < 60.0;
  return {5, ok,
          std::string(within_4se ? "all 8 estimates within 4*stderr; "
                                 : "4*stderr consistency BROKEN; ") +
              fmt("max stderr = %.3f vs required < 0.05 (postselection rate "
                  "1/4 and the X/Y split put the per-quadrature floor at "
                  "0.14), %.1f s",
                  worst_se, elapsed)};
}

// criterion 6: property suite
Criterion criterion_6() {
  std::vector<std::string> failures;

  // unitarity of every element and coupling operator at 1e-12
  {
    bool ok = beam_splitter().is_unitary(1e-12);
    for (double angle : {0.0, 0.7, 1.9, 3.14, 5.5}) {
      ok = ok && polarization_tuner(angle).is_unitary(1e-12);
      ok = ok && path_phase(angle).is_unitary(1e-12);
    }
    for (ObservableTag tag : {ObservableTag::XL, ObservableTag::XR,
                              ObservableTag::ZL, ObservableTag::ZR}) {
      for (double g : {1e-4, 1e-3, 1e-2, 0.1}) {
        ok = ok && coupling_unitary(CouplingSpec::canonical(observable(tag), g))
                       .is_unitary(1e-12);
        ok = ok &&
             coupling_unitary(CouplingSpec::paper_cheshire(observable(tag), g))
                 .is_unitary(1e-12);
      }
    }
    if (!ok) failures.push_back("unitarity");
  }

  // completeness on 100 random pre/post pairs
  {
    oracle::Rng rng(0xACCE55);
    int accepted = 0;
    bool ok = true;
    while (accepted < 100) {
      const oracle::Vec a = oracle::random_unit_vec(4, rng);
      const oracle::Vec b = oracle::random_unit_vec(4, rng);
      Vector va(4), vb(4);
      for (int i = 0; i < 4; ++i) {
        va(i) = a[static_cast<size_t>(i)];
        vb(i) = b[static_cast<size_t>(i)];
      }
      const StateVector pre({path_label(), polarization_label()}, va);
      const StateVector post({path_label(), polarization_label()}, vb);
      if (std::abs(inner(post, pre)) < 1e-3) continue;
      ++accepted;
      const Complex sum =
          weak_value_analytic(observable(ObservableTag::PiL), pre, post).value +
          weak_value_analytic(observable(ObservableTag::PiR), pre, post).value;
      if (std::abs(sum - Complex(1.0, 0.0)) > 1e-10) ok = false;
    }
    if (!ok) failures.push_back("completeness");
  }

  // linearity on 100 random Hermitian pairs
  {
    oracle::Rng rng(0x11EA);
    const StateVector pre = preselection_delayed(0.8, 0.3);
    const StateVector post = postselection_delayed();
    bool ok = true;
    for (int round = 0; round < 100; ++round) {
      const oracle::Mat ma = oracle::random_hermitian(4, rng);
      const oracle::Mat mb = oracle::random_hermitian(4, rng);
      Matrix ea(4, 4), eb(4, 4);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          ea(i, j) = ma[static_cast<size_t>(i)][static_cast<size_t>(j)];
          eb(i, j) = mb[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
      const Operator A({path_label(), polarization_label()}, ea);
      const Operator B({path_label(), polarization_label()}, eb);
      const Complex lhs = weak_value_analytic(A + B, pre, post).value;
      const Complex rhs = weak_value_analytic(A, pre, post).value +
                          weak_value_analytic(B, pre, post).value;
      if (std::abs(lhs - rhs) > 1e-10) ok = false;
    }
    if (!ok) failures.push_back("linearity");
  }

  // DSL round-trip on 100 random programs
  {
    oracle::Rng rng(0xD51);
    bool ok = true;
    for (int round = 0; round < 100; ++round) {
      const CircuitProgram p = parse(oracle::random_program_source(rng));
      if (!(parse(pretty_print(p)) == p)) ok = false;
    }
    if (!ok) failures.push_back("dsl-round-trip");
  }

  // byte-determinism of seeded CLI runs
  {
    const std::string flags =
        "run delayed --theta 0.9 --phi 1.3 --method sample --g 1e-2 "
        "--shots 100000 --seed 12345";
    int code_a = 0, code_b = 0;
    const std::string out_a = run_cli_capture(flags, &code_a);
    const std::string out_b = run_cli_capture(flags, &code_b);
    if (out_a.empty() || out_a != out_b || code_a != 0 || code_b != 0)
      failures.push_back("byte-determinism");
  }

  if (failures.empty())
    return {6, true,
            "unitarity, completeness, linearity, DSL round-trip and "
            "byte-determinism all hold"};
  std::string detail = "failed:";
  for (const auto& f : failures) detail += " " + f;
  return {6, false, detail};
}

// criterion 7: pole handling
Criterion criterion_7() {
  bool ok = true;
  std::string detail;

  ExperimentConfig cfg;
  cfg.theta = M_PI / 2;
  cfg.phi = M_PI;
  const SweepRow row = run_delayed_choice(cfg);
  if (!row.diverged) {
    ok = false;
    detail += "row not flagged; ";
  }
  if (!std::isfinite(row.theta) || !std::isfinite(row.phi) ||
      !std::isfinite(row.prob)) {
    ok = false;
    detail += "unflagged fields not finite; ";
  }

  int code = 0;
  const std::string out = run_cli_capture("run delayed --theta pi/2 --phi pi", &code);
  if (code != 2) {
    ok = false;
    detail += "exit code " + std::to_string(code) + " != 2; ";
  }
  if (out.find("\"flag\":\"diverged\"") == std::string::npos) {
    ok = false;
    detail += "output lacks diverged flag; ";
  }
  if (out.find("nan") != std::string::npos) {
    ok = false;
    detail += "NaN leaked into output; ";
  }
  if (ok) detail = "flagged row, exit code 2, no NaN in unflagged fields";
  return {7, ok, detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> results = {
      criterion_1(), criterion_2(), criterion_3(), criterion_4(),
      criterion_5(), criterion_6(), criterion_7()};

  int failed = 0;
  for (const Criterion& c : results) {
    if (!c.passed) ++failed;
    std::printf("criterion %d: %s -- %s\n", c.number,
                c.passed ? "PASS" : "FAIL", c.summary.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed,
              results.size());
  return failed;
}
