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
 * Weak values three ways: analytic (the <post|A|pre> / <post|pre> quotient),
 * exact operational (unitary qubit-meter coupling, postselection, meter
 * tomography), and statistical (seeded shot sampling of the same protocol).
 *
 * The canonical coupling exp(-i g A (x) Y_m) rotates the meter by g*a on each
 * eigenspace of A, so conditioned on postselection the meter ends up
 * proportional to |0> + g A_w |1> + O(g^2) and the weak value is read off as
 * (<X_m> + i <Y_m>) / (2g). A second flavor reproduces the two-branch joint
 * unitary built from R(theta_g) Z R(theta_g) meter reflections (g = 4
 * theta_g); its first-order shift is NOT the weak value for general tuner
 * settings, which paper_flavor_first_order_shift() quantifies.
 */

#pragma once

#include <cstdint>

#include "mzcheshire/elements.hpp"
#include "mzcheshire/state.hpp"

namespace mzc {

/// Minimum |<post|pre>| below which weak values are treated as divergent.
inline constexpr double kOverlapEps = 1e-10;

/// Default coupling strength for meter-based estimation.
inline constexpr double kDefaultCoupling = 1e-3;

struct VanishingOverlap : Error {
  using Error::Error;
};
struct ZeroProbability : Error {
  using Error::Error;
};
struct NoPostselectedEvents : Error {
  using Error::Error;
};
struct NonHermitianObservable : Error {
  using Error::Error;
};

enum class Method { Analytic, MeterExact, MeterSampled };

std::string to_string(Method method);

/// A weak value with the provenance that produced it.
struct WeakValue {
  Complex value;
  Method method;
  StateVector pre;
  StateVector post;
  Operator observable;
  double g = 0.0;           // coupling strength (MeterExact / MeterSampled)
  long long shots = 0;      // MeterSampled only
  double std_error = 0.0;   // MeterSampled only; standard error of `value`
                            // (quadrature-combined, always > 0 for shots > 0)
};

enum class CouplingFlavor { Canonical, PaperCheshire };

/// Weak system-meter coupling: a Hermitian observable on
/// Path (x) Polarization plus a dimensionless strength g = 4 theta_g.
struct CouplingSpec {
  Operator observable;
  double g;
  double theta_g;
  CouplingFlavor flavor;

  static CouplingSpec canonical(const Operator& observable, double g);
  static CouplingSpec paper_cheshire(const Operator& observable, double g);
};

/// value = <post|A|pre> / <post|pre>. Throws VanishingOverlap when the
/// denominator magnitude is below overlap_eps (postselection probability
/// numerically zero; the weak value diverges).
WeakValue weak_value_analytic(const Operator& A, const StateVector& pre,
                              const StateVector& post,
                              double overlap_eps = kOverlapEps);

/// Closed forms of the four delayed-choice weak values, with
/// D = cos(theta/2) + sin(theta/2) e^{i phi}:
///   xL = sin(theta/2)/D            xR = cos(theta/2) e^{i phi}/D
///   zL = cos(theta/2)/D            zR = -e^{i phi} sin(theta/2)/D
/// Accepts XL/XR/ZL/ZR only; throws VanishingOverlap when |D|/2 < overlap_eps.
Complex closed_form_delayed(ObservableTag tag, double theta, double phi,
                            double overlap_eps = kOverlapEps);

/// The denominator D above (also 2 * <post|pre> of the delayed pair).
Complex delayed_overlap_denominator(double theta, double phi);

/// Joint unitary on Path (x) Polarization (x) Meter(0) realizing the
/// coupling. Canonical: exp(-i g A (x) Y_m), built spectrally. PaperCheshire:
/// (I - Pi) (x) sigma (x) I + Pi (x) sigma (x) R(theta_g) Z R(theta_g), valid
/// for the four arm observables (A must match one of them).
Operator coupling_unitary(const CouplingSpec& spec);

struct Postselected {
  StateVector conditional;  // renormalized, on the labels not projected out
  double probability;       // squared norm before renormalization
};

/// Projects `state` onto `target` (target labels a subset of state labels)
/// and renormalizes what remains. Throws ZeroProbability when the projection
/// probability is below overlap_eps^2.
Postselected postselect(const StateVector& state, const StateVector& target,
                        double overlap_eps = kOverlapEps);

/// Exact operational estimate: couple pre (x) |0>_m with the given flavor,
/// postselect the system on `post`, read the meter via
/// (<X_m> + i <Y_m>)/(2g). Requires 0 < g <= 0.1. The Canonical default
/// matches weak_value_analytic to O(g) as g -> 0.
WeakValue estimate_weak_value_meter(const Operator& A, const StateVector& pre,
                                    const StateVector& post, double g,
                                    CouplingFlavor flavor = CouplingFlavor::Canonical);

/// Statistical front-end to the meter protocol: `shots` trials, each
/// postselected as a Bernoulli event; survivors alternate X-basis and
/// Y-basis meter measurements (even/odd success index) drawn from exact Born
/// probabilities. Deterministic for a fixed seed. Throws NoPostselectedEvents
/// when no trial survives.
WeakValue sample_weak_value(const Operator& A, const StateVector& pre,
                            const StateVector& post, double g, long long shots,
                            std::uint64_t seed);

/// First-order meter shift predicted for the PaperCheshire coupling of the
/// arm observable Pi_arm (x) sigma:
/// <post|Pi_arm (x) sigma|pre> / <post|(I (x) sigma)|pre>.
/// Coincides with the weak value only in special geometries; exposed so the
/// discrepancy can be inspected rather than hidden.
Complex paper_flavor_first_order_shift(ObservableTag tag, const StateVector& pre,
                                       const StateVector& post);

namespace detail {
/// splitmix64 step; used to derive independent per-row / per-observable seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt);
}  // namespace detail

}  // namespace mzc
