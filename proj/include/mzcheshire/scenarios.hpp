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

/**
 * @file
 * Preset experiments and the (theta, phi) sweep engine.
 *
 * OriginalCheshire reports (Pi_L, Pi_R, sigma_x^L, sigma_x^R) weak values for
 * the original pre/post pair; GrinSnarl reports the four arm observables for
 * the same pair; DelayedChoice evaluates the tuner-controlled pair at one
 * (theta, phi) point. Sweeps emit one row per grid point, ordered theta-major,
 * with pole points flagged `diverged` instead of dropped so tables stay
 * grid-complete.
 */

#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

#include "mzcheshire/weak.hpp"

namespace mzc {

enum class Scenario { OriginalCheshire, GrinSnarl, DelayedChoice };

std::string to_string(Scenario scenario);

struct ExperimentConfig {
  Scenario scenario = Scenario::DelayedChoice;
  double theta = 0.0;
  double phi = 0.0;
  double g = kDefaultCoupling;
  Method method = Method::Analytic;
  long long shots = 0;  // 0 = exact mode; required > 0 for MeterSampled
  std::uint64_t seed = 0;

  void validate() const;
};

/// One sweep record: the four delayed-choice weak values at (theta, phi).
/// Diverged rows keep theta/phi/prob and carry no (NaN) weak values.
struct SweepRow {
  double theta = 0.0;
  double phi = 0.0;
  std::array<Complex, 4> values{};      // xL, xR, zL, zR
  std::array<double, 4> std_errors{};   // MeterSampled only
  double prob = 0.0;                    // postselection probability
  bool diverged = false;
  Method method = Method::Analytic;
  double g = kDefaultCoupling;          // coupling used (meter/sampled rows)
};

inline constexpr std::array<ObservableTag, 4> kSweepObservables{
    ObservableTag::XL, ObservableTag::XR, ObservableTag::ZL, ObservableTag::ZR};

struct SweepTable {
  std::vector<SweepRow> rows;

  long long flagged_count() const;
};

/// Four weak values of a Section-II-style preset, in `tags` order.
struct QuartetReport {
  std::array<ObservableTag, 4> tags;
  std::array<Complex, 4> values;
  std::array<double, 4> std_errors;
  double prob;
  Method method;
};

QuartetReport run_original_cheshire(Method method = Method::Analytic,
                                    double g = kDefaultCoupling,
                                    long long shots = 0, std::uint64_t seed = 0);

QuartetReport run_grin_snarl(Method method = Method::Analytic,
                             double g = kDefaultCoupling, long long shots = 0,
                             std::uint64_t seed = 0);

/// Evaluates one delayed-choice row by the configured method. A vanishing
/// pre/post overlap produces a `diverged` row, not an exception.
SweepRow run_delayed_choice(const ExperimentConfig& cfg);

/// Did switching (theta, phi) from `a` to `b` exchange which arm holds the
/// unit-magnitude sigma_x weak value and which holds sigma_z?
struct FlipReport {
  SweepRow row_a;
  SweepRow row_b;
  bool x_arm_swapped = false;
  bool z_arm_swapped = false;
  bool vanishing_entries_zero = false;  // |entry| <= 1e-12 (4*stderr sampled)
  bool flip_confirmed = false;
  double z_right_sign_b = 0.0;  // sign of Re(zR) in configuration b
};

/// Default comparison: (theta, phi) = (0, 0) versus (pi, 0).
FlipReport flip_check();
FlipReport flip_check(const ExperimentConfig& a, const ExperimentConfig& b);

/// One row per (theta, phi) grid point, theta-major order. Sampled rows use
/// per-row seeds derived from cfg-style `seed`.
SweepTable sweep(const std::vector<double>& thetas,
                 const std::vector<double>& phis,
                 Method method = Method::Analytic, double g = kDefaultCoupling,
                 long long shots = 0, std::uint64_t seed = 0);

// Serialization. CSV column order is fixed:
// theta,phi,xL_re,xL_im,xR_re,xR_im,zL_re,zL_im,zR_re,zR_im,prob,flag
// with empty weak-value cells on diverged rows. JSON mirrors the same fields
// (nulls on diverged rows) plus the row's method tag.
void write_csv(std::ostream& out, const SweepTable& table);
void write_json(std::ostream& out, const SweepTable& table);
std::string csv_header();
std::string row_to_csv(const SweepRow& row);
std::string row_to_json_string(const SweepRow& row);
std::string quartet_to_csv(const QuartetReport& report);
std::string quartet_to_json_string(const QuartetReport& report, Scenario scenario);

/// "%.17g" (shortest exact round-trip is not needed; 17 significant digits
/// always round-trip and keep seeded output byte-stable).
std::string format_double(double v);

}  // namespace mzc
