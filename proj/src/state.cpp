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

#include "mzcheshire/state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace mzc {

namespace {

std::string labels_to_string(const std::vector<SubsystemLabel>& labels) {
  std::string out = "[";
  for (size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ", ";
    out += to_string(labels[i]);
  }
  return out + "]";
}

void check_no_duplicates(const std::vector<SubsystemLabel>& labels,
                         const char* where) {
  for (size_t i = 0; i < labels.size(); ++i)
    for (size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j])
        throw DuplicateLabel(std::string(where) + ": duplicate subsystem " +
                             to_string(labels[i]));
}

bool contains(const std::vector<SubsystemLabel>& labels, SubsystemLabel l) {
  return std::find(labels.begin(), labels.end(), l) != labels.end();
}

int position_of(const std::vector<SubsystemLabel>& labels, SubsystemLabel l) {
  auto it = std::find(labels.begin(), labels.end(), l);
  return static_cast<int>(it - labels.begin());
}

// Basis-index remap when relabeling from `src` order to `dst` order (both
// permutations of the same set). First label owns the most significant bit.
std::vector<Eigen::Index> index_map(const std::vector<SubsystemLabel>& src,
                                    const std::vector<SubsystemLabel>& dst) {
  const int n = static_cast<int>(src.size());
  const Eigen::Index dim = Eigen::Index{1} << n;
  std::vector<int> dst_pos(n);
  for (int j = 0; j < n; ++j) dst_pos[j] = position_of(dst, src[j]);
  std::vector<Eigen::Index> map(static_cast<size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    Eigen::Index out = 0;
    for (int j = 0; j < n; ++j) {
      const Eigen::Index bit = (i >> (n - 1 - j)) & 1;
      out |= bit << (n - 1 - dst_pos[j]);
    }
    map[static_cast<size_t>(i)] = out;
  }
  return map;
}

}  // namespace

std::string to_string(const SubsystemLabel& label) {
  switch (label.kind) {
    case Subsystem::Path:
      return "Path";
    case Subsystem::Polarization:
      return "Polarization";
    case Subsystem::Meter: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "Meter(%d)", label.index);
      return buf;
    }
  }
  return "?";
}

StateVector::StateVector(std::vector<SubsystemLabel> labels, Vector amplitudes)
    : labels_(std::move(labels)), amplitudes_(std::move(amplitudes)) {
  check_no_duplicates(labels_, "StateVector");
  const Eigen::Index expected = Eigen::Index{1} << labels_.size();
  if (amplitudes_.size() != expected)
    throw Error("StateVector: amplitude count " +
                std::to_string(amplitudes_.size()) + " != 2^" +
                std::to_string(labels_.size()) + " for labels " +
                labels_to_string(labels_));
}

StateVector StateVector::basis(std::vector<SubsystemLabel> labels, int index) {
  Vector amps = Vector::Zero(Eigen::Index{1} << labels.size());
  amps(index) = 1.0;
  return StateVector(std::move(labels), std::move(amps));
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(amplitudes_.squaredNorm() - 1.0) < tol;
}

StateVector StateVector::normalized() const {
  return StateVector(labels_, amplitudes_ / amplitudes_.norm());
}

StateVector StateVector::reordered(const std::vector<SubsystemLabel>& order) const {
  if (order == labels_) return *this;
  if (order.size() != labels_.size() ||
      !std::is_permutation(order.begin(), order.end(), labels_.begin()))
    throw LabelMismatch("reordered: " + labels_to_string(order) +
                        " is not a permutation of " + labels_to_string(labels_));
  const auto map = index_map(labels_, order);
  Vector out(amplitudes_.size());
  for (Eigen::Index i = 0; i < amplitudes_.size(); ++i)
    out(map[static_cast<size_t>(i)]) = amplitudes_(i);
  return StateVector(order, std::move(out));
}

StateVector StateVector::canonical() const {
  auto sorted = labels_;
  std::sort(sorted.begin(), sorted.end());
  return reordered(sorted);
}

StateVector StateVector::operator+(const StateVector& other) const {
  const StateVector aligned = other.reordered(labels_);
  return StateVector(labels_, amplitudes_ + aligned.amplitudes_);
}

StateVector StateVector::operator-(const StateVector& other) const {
  const StateVector aligned = other.reordered(labels_);
  return StateVector(labels_, amplitudes_ - aligned.amplitudes_);
}

StateVector operator*(Complex scale, const StateVector& state) {
  return StateVector(state.labels_, scale * state.amplitudes_);
}

Operator::Operator(std::vector<SubsystemLabel> labels, Matrix matrix)
    : labels_(std::move(labels)), matrix_(std::move(matrix)) {
  check_no_duplicates(labels_, "Operator");
  const Eigen::Index expected = Eigen::Index{1} << labels_.size();
  if (matrix_.rows() != expected || matrix_.cols() != expected)
    throw Error("Operator: matrix is " + std::to_string(matrix_.rows()) + "x" +
                std::to_string(matrix_.cols()) + ", expected dimension " +
                std::to_string(expected) + " for labels " +
                labels_to_string(labels_));
}

Operator Operator::identity(std::vector<SubsystemLabel> labels) {
  const Eigen::Index dim = Eigen::Index{1} << labels.size();
  return Operator(std::move(labels), Matrix::Identity(dim, dim));
}

bool Operator::is_unitary(double tol) const {
  const Matrix delta =
      matrix_ * matrix_.adjoint() - Matrix::Identity(dim(), dim());
  return delta.cwiseAbs().maxCoeff() < tol;
}

bool Operator::is_hermitian(double tol) const {
  const Matrix delta = matrix_ - matrix_.adjoint();
  return delta.cwiseAbs().maxCoeff() < tol;
}

Operator Operator::adjoint() const {
  return Operator(labels_, matrix_.adjoint());
}

Operator Operator::operator*(const Operator& other) const {
  if (labels_ != other.labels_)
    throw LabelMismatch("Operator*: label lists differ (" +
                        labels_to_string(labels_) + " vs " +
                        labels_to_string(other.labels_) + "); embed first");
  return Operator(labels_, matrix_ * other.matrix_);
}

Operator Operator::operator+(const Operator& other) const {
  if (labels_ != other.labels_)
    throw LabelMismatch("Operator+: label lists differ; embed first");
  return Operator(labels_, matrix_ + other.matrix_);
}

Operator Operator::operator-(const Operator& other) const {
  if (labels_ != other.labels_)
    throw LabelMismatch("Operator-: label lists differ; embed first");
  return Operator(labels_, matrix_ - other.matrix_);
}

Operator operator*(Complex scale, const Operator& op) {
  return Operator(op.labels_, scale * op.matrix_);
}

Operator pauli_x(SubsystemLabel label) {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return Operator({label}, std::move(m));
}

Operator pauli_y(SubsystemLabel label) {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return Operator({label}, std::move(m));
}

Operator pauli_z(SubsystemLabel label) {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return Operator({label}, std::move(m));
}

Operator projector(SubsystemLabel label, int which) {
  Matrix m = Matrix::Zero(2, 2);
  m(which, which) = 1.0;
  return Operator({label}, std::move(m));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  for (const auto& l : b.labels())
    if (contains(a.labels(), l))
      throw DuplicateLabel("tensor: subsystem " + to_string(l) +
                           " appears in both factors");
  auto labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  Vector amps(a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i)
    for (Eigen::Index j = 0; j < b.dim(); ++j)
      amps(i * b.dim() + j) = a.amplitudes()(i) * b.amplitudes()(j);
  return StateVector(std::move(labels), std::move(amps));
}

Operator tensor(const Operator& a, const Operator& b) {
  for (const auto& l : b.labels())
    if (contains(a.labels(), l))
      throw DuplicateLabel("tensor: subsystem " + to_string(l) +
                           " appears in both factors");
  auto labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  const Eigen::Index da = a.dim(), db = b.dim();
  Matrix m(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j)
      for (Eigen::Index k = 0; k < db; ++k)
        for (Eigen::Index l = 0; l < db; ++l)
          m(i * db + k, j * db + l) = a.matrix()(i, j) * b.matrix()(k, l);
  return Operator(std::move(labels), std::move(m));
}

Operator embed(const Operator& op, const std::vector<SubsystemLabel>& target) {
  check_no_duplicates(target, "embed");
  for (const auto& l : op.labels())
    if (!contains(target, l))
      throw LabelNotInTarget("embed: operator subsystem " + to_string(l) +
                             " not in target " + labels_to_string(target));
  const int n = static_cast<int>(target.size());
  const int k = static_cast<int>(op.labels().size());
  const Eigen::Index dim = Eigen::Index{1} << n;

  // target bit positions of the operator's own labels, in the op's order
  std::vector<int> op_pos(static_cast<size_t>(k));
  for (int j = 0; j < k; ++j) op_pos[static_cast<size_t>(j)] = position_of(target, op.labels()[j]);

  const auto op_bits = [&](Eigen::Index full) {
    Eigen::Index sub = 0;
    for (int j = 0; j < k; ++j) {
      const Eigen::Index bit = (full >> (n - 1 - op_pos[static_cast<size_t>(j)])) & 1;
      sub |= bit << (k - 1 - j);
    }
    return sub;
  };
  const auto rest_bits = [&](Eigen::Index full) {
    Eigen::Index rest = full;
    for (int j = 0; j < k; ++j)
      rest &= ~(Eigen::Index{1} << (n - 1 - op_pos[static_cast<size_t>(j)]));
    return rest;
  };

  Matrix m = Matrix::Zero(dim, dim);
  for (Eigen::Index row = 0; row < dim; ++row)
    for (Eigen::Index col = 0; col < dim; ++col)
      if (rest_bits(row) == rest_bits(col))
        m(row, col) = op.matrix()(op_bits(row), op_bits(col));
  return Operator(target, std::move(m));
}

StateVector apply(const Operator& op, const StateVector& state) {
  for (const auto& l : op.labels())
    if (!contains(state.labels(), l))
      throw LabelNotInState("apply: operator subsystem " + to_string(l) +
                            " not in state " + labels_to_string(state.labels()));
  const Operator lifted = embed(op, state.labels());
  return StateVector(state.labels(), lifted.matrix() * state.amplitudes());
}

Complex inner(const StateVector& bra, const StateVector& ket) {
  if (bra.labels().size() != ket.labels().size() ||
      !std::is_permutation(bra.labels().begin(), bra.labels().end(),
                           ket.labels().begin()))
    throw LabelMismatch("inner: label sets differ (" +
                        labels_to_string(bra.labels()) + " vs " +
                        labels_to_string(ket.labels()) + ")");
  const StateVector aligned = ket.reordered(bra.labels());
  // Eigen's dot conjugates its first operand, which is exactly the bra side.
  return bra.amplitudes().dot(aligned.amplitudes());
}

}  // namespace mzc
