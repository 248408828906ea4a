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
 * Optical elements of the Mach-Zehnder train plus the pre/postselection
 * states of the two experiment families, each as a named constructor.
 *
 * Phase convention: the 50:50 beam splitter attaches the reflection phase i
 * to the left arm, so the single-photon input port emerges as
 * (i|L> + |R>)/sqrt2. `phi` everywhere means the net relative phase of |R>
 * versus |L> in the prepared state; prepare_delayed() compensates the
 * beam-splitter reflection phase so the pipeline output equals the
 * delayed-choice preselection exactly.
 */

#pragma once

#include "mzcheshire/state.hpp"

namespace mzc {

/// 50:50 beam splitter on Path, (1/sqrt2) [[i, 1], [1, i]] in (L, R) order.
Operator beam_splitter();

/// Polarization rotation by theta/2: |H> -> cos(theta/2)|H> + sin(theta/2)|V>.
Operator polarization_tuner(double theta);

/// Relative path phase diag(1, e^{i phi}) in (L, R) order.
Operator path_phase(double phi);

/// The single-photon input port of the first beam splitter (basis index 0 on
/// Path): beam_splitter() applied to it yields (i|L> + |R>)/sqrt2.
StateVector beam_splitter_input();

/// Original-Cheshire preselection (i|L> + |R>)|H> / sqrt2.
StateVector preselection_original();

/// Delayed-choice preselection
/// (|L> + e^{i phi}|R>)(cos(theta/2)|H> + sin(theta/2)|V>) / sqrt2,
/// constructed directly.
StateVector preselection_delayed(double theta, double phi);

/// Same state built by the element pipeline: input port -> beam splitter ->
/// polarization tuner -> path phase, with the reflection phase on |L>
/// compensated so the result equals preselection_delayed(theta, phi) exactly.
StateVector prepare_delayed(double theta, double phi);

/// Rank-1 postselection target of the original scheme, (|L>|H> - i|R>|V>)/sqrt2.
StateVector postselection_original();

/// Rank-1 postselection target of the delayed-choice scheme,
/// (|L>|H> + |R>|V>)/sqrt2. The half-waveplate / phase-shifter / BS2 / PBS /
/// detector train is modeled as this exact projection.
StateVector postselection_delayed();

/// The six weak-measurement observables, keyed the way the CLI and circuit
/// files spell them.
enum class ObservableTag { PiL, PiR, XL, XR, ZL, ZR };

/// PiL/PiR live on Path alone; XL/XR/ZL/ZR on Path (x) Polarization.
Operator observable(ObservableTag tag);

std::string to_string(ObservableTag tag);

struct UnknownObservable : Error {
  using Error::Error;
};

/// Inverse of to_string; throws UnknownObservable.
ObservableTag observable_from_string(const std::string& name);

}  // namespace mzc
