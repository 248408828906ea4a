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

#include "mzcheshire/elements.hpp"

#include <cmath>

namespace mzc {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
const Complex kI{0.0, 1.0};
}  // namespace

Operator beam_splitter() {
  Matrix m(2, 2);
  m << kI * kInvSqrt2, kInvSqrt2, kInvSqrt2, kI * kInvSqrt2;
  return Operator({path_label()}, std::move(m));
}

Operator polarization_tuner(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Matrix m(2, 2);
  m << c, -s, s, c;
  return Operator({polarization_label()}, std::move(m));
}

Operator path_phase(double phi) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = std::exp(kI * phi);
  return Operator({path_label()}, std::move(m));
}

StateVector beam_splitter_input() {
  return StateVector::basis({path_label()}, 0);
}

StateVector preselection_original() {
  Vector amps = Vector::Zero(4);
  amps(0) = kI * kInvSqrt2;  // |L>|H>
  amps(2) = kInvSqrt2;       // |R>|H>
  return StateVector({path_label(), polarization_label()}, std::move(amps));
}

StateVector preselection_delayed(double theta, double phi) {
  Vector path(2);
  path << kInvSqrt2, std::exp(kI * phi) * kInvSqrt2;
  Vector pol(2);
  pol << std::cos(theta / 2), std::sin(theta / 2);
  return tensor(StateVector({path_label()}, std::move(path)),
                StateVector({polarization_label()}, std::move(pol)));
}

StateVector prepare_delayed(double theta, double phi) {
  StateVector photon = tensor(beam_splitter_input(),
                              StateVector::basis({polarization_label()}, 0));
  photon = apply(beam_splitter(), photon);
  photon = apply(polarization_tuner(theta), photon);
  // phi is the net |R>-vs-|L> phase; the beam splitter already put i on |L>,
  // so shift |R> by phi + pi/2 and strip the common factor i.
  photon = apply(path_phase(phi + M_PI / 2), photon);
  return -kI * photon;
}

StateVector postselection_original() {
  Vector amps = Vector::Zero(4);
  amps(0) = kInvSqrt2;        // |L>|H>
  amps(3) = -kI * kInvSqrt2;  // |R>|V>
  return StateVector({path_label(), polarization_label()}, std::move(amps));
}

StateVector postselection_delayed() {
  Vector amps = Vector::Zero(4);
  amps(0) = kInvSqrt2;  // |L>|H>
  amps(3) = kInvSqrt2;  // |R>|V>
  return StateVector({path_label(), polarization_label()}, std::move(amps));
}

Operator observable(ObservableTag tag) {
  switch (tag) {
    case ObservableTag::PiL:
      return projector(path_label(), 0);
    case ObservableTag::PiR:
      return projector(path_label(), 1);
    case ObservableTag::XL:
      return tensor(projector(path_label(), 0), pauli_x(polarization_label()));
    case ObservableTag::XR:
      return tensor(projector(path_label(), 1), pauli_x(polarization_label()));
    case ObservableTag::ZL:
      return tensor(projector(path_label(), 0), pauli_z(polarization_label()));
    case ObservableTag::ZR:
      return tensor(projector(path_label(), 1), pauli_z(polarization_label()));
  }
  throw UnknownObservable("observable: bad tag");
}

std::string to_string(ObservableTag tag) {
  switch (tag) {
    case ObservableTag::PiL:
      return "piL";
    case ObservableTag::PiR:
      return "piR";
    case ObservableTag::XL:
      return "xL";
    case ObservableTag::XR:
      return "xR";
    case ObservableTag::ZL:
      return "zL";
    case ObservableTag::ZR:
      return "zR";
  }
  return "?";
}

ObservableTag observable_from_string(const std::string& name) {
  if (name == "piL") return ObservableTag::PiL;
  if (name == "piR") return ObservableTag::PiR;
  if (name == "xL") return ObservableTag::XL;
  if (name == "xR") return ObservableTag::XR;
  if (name == "zL") return ObservableTag::ZL;
  if (name == "zR") return ObservableTag::ZR;
  throw UnknownObservable("unknown observable '" + name +
                          "' (expected xL, xR, zL, zR, piL or piR)");
}

}  // namespace mzc
