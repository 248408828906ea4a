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
 * Dense states and operators on small tensor products of labeled qubits.
 *
 * Every subsystem is two-dimensional. Basis encoding is fixed project-wide:
 * Path |L> -> 0, |R> -> 1; Polarization |H> -> 0, |V> -> 1; Meter |0> -> 0,
 * |1> -> 1. The first label in a composite owns the most significant bit of
 * the basis index. Canonical subsystem order is
 * Path < Polarization < Meter(0) < Meter(1) < ...; `inner` and `apply`
 * reconcile arbitrary label orderings by permutation, so callers never need
 * to care how a state was assembled.
 *
 * All values are immutable after construction and safe to share across
 * threads.
 */

#pragma once

#include <complex>
#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mzc {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Root of the library's error hierarchy.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DuplicateLabel : Error {
  using Error::Error;
};
struct LabelNotInTarget : Error {
  using Error::Error;
};
struct LabelNotInState : Error {
  using Error::Error;
};
struct LabelMismatch : Error {
  using Error::Error;
};

enum class Subsystem { Path, Polarization, Meter };

/// A named two-level subsystem. `index` distinguishes meters; it is 0 for
/// Path and Polarization (which may appear at most once per composite).
struct SubsystemLabel {
  Subsystem kind;
  int index = 0;

  friend auto operator<=>(const SubsystemLabel&, const SubsystemLabel&) = default;
};

inline SubsystemLabel path_label() { return {Subsystem::Path, 0}; }
inline SubsystemLabel polarization_label() { return {Subsystem::Polarization, 0}; }
inline SubsystemLabel meter_label(int index = 0) { return {Subsystem::Meter, index}; }

std::string to_string(const SubsystemLabel& label);

/// Complex amplitude vector over the computational basis of its labels.
class StateVector {
 public:
  StateVector(std::vector<SubsystemLabel> labels, Vector amplitudes);

  /// Basis state |index> over `labels` (index bits follow the label order,
  /// first label most significant).
  static StateVector basis(std::vector<SubsystemLabel> labels, int index);

  const std::vector<SubsystemLabel>& labels() const { return labels_; }
  const Vector& amplitudes() const { return amplitudes_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  int num_subsystems() const { return static_cast<int>(labels_.size()); }

  double norm() const { return amplitudes_.norm(); }
  bool is_normalized(double tol = 1e-12) const;
  StateVector normalized() const;

  /// Same state with subsystems listed in `order` (a permutation of the
  /// current labels). Throws LabelMismatch otherwise.
  StateVector reordered(const std::vector<SubsystemLabel>& order) const;

  /// Reordered into the canonical Path < Polarization < Meter(i) order.
  StateVector canonical() const;

  StateVector operator+(const StateVector& other) const;
  StateVector operator-(const StateVector& other) const;
  friend StateVector operator*(Complex scale, const StateVector& state);

 private:
  std::vector<SubsystemLabel> labels_;
  Vector amplitudes_;
};

/// Dense complex matrix tagged with the subsystems it acts on.
class Operator {
 public:
  Operator(std::vector<SubsystemLabel> labels, Matrix matrix);

  static Operator identity(std::vector<SubsystemLabel> labels);

  const std::vector<SubsystemLabel>& labels() const { return labels_; }
  const Matrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }

  bool is_unitary(double tol = 1e-12) const;
  bool is_hermitian(double tol = 1e-12) const;

  Operator adjoint() const;

  /// Composition / linear combination; both operands must carry identical
  /// label lists (use embed() first to align them).
  Operator operator*(const Operator& other) const;
  Operator operator+(const Operator& other) const;
  Operator operator-(const Operator& other) const;
  friend Operator operator*(Complex scale, const Operator& op);

 private:
  std::vector<SubsystemLabel> labels_;
  Matrix matrix_;
};

// Single-subsystem building blocks, in the fixed basis encoding.
Operator pauli_x(SubsystemLabel label);
Operator pauli_y(SubsystemLabel label);
Operator pauli_z(SubsystemLabel label);
/// |which><which| on one subsystem (which is 0 or 1).
Operator projector(SubsystemLabel label, int which);

/// Kronecker product; labels concatenate a-then-b. Throws DuplicateLabel if
/// the label sets intersect.
StateVector tensor(const StateVector& a, const StateVector& b);
Operator tensor(const Operator& a, const Operator& b);

/// Lift `op` to `target` (acting as identity on the extra labels, result in
/// target order). Throws LabelNotInTarget if op has labels outside target.
Operator embed(const Operator& op, const std::vector<SubsystemLabel>& target);

/// Matrix-vector product in the state's label ordering; `op` is auto-embedded
/// into the state's labels. Throws LabelNotInState.
StateVector apply(const Operator& op, const StateVector& state);

/// <bra|ket>, conjugate-linear in bra. Label sets must match (any order).
Complex inner(const StateVector& bra, const StateVector& ket);

}  // namespace mzc
