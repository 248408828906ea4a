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
 * A line-oriented language for interferometer experiments (.mzi files).
 *
 * One statement per line, `#` comments, blank lines allowed, LF or CRLF:
 *
 *   bs1
 *   tuner theta=<expr>
 *   phase phi=<expr>
 *   preselect delayed|original
 *   postselect delayed|original
 *   measure <xL|xR|zL|zR|piL|piR> method=<analytic|meter|sample>
 *           [g=<expr>] [shots=<int>] [seed=<int>]
 *
 * Angle expressions are radians with `pi` as the only named constant:
 * `pi`, `pi/2`, `3*pi/4`, `2pi`, decimal literals (also scientific, e.g.
 * `1e-3` for g). Repeated tuner/phase statements compose additively; exactly
 * one preselect and one postselect are required. `bs1` is declarative (the
 * beam splitter is implicit in both preselection families).
 */

#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "mzcheshire/scenarios.hpp"

namespace mzc {

struct SyntaxError : Error {
  int line;
  int column;
  std::string expected;
  SyntaxError(int line, int column, const std::string& expected_desc);
};

struct DuplicatePreselect : Error {
  using Error::Error;
};
struct DuplicatePostselect : Error {
  using Error::Error;
};
struct MissingPreselect : Error {
  using Error::Error;
};
struct MissingPostselect : Error {
  using Error::Error;
};

/// A scenario error rethrown with the source line that triggered it.
struct ExecutionError : Error {
  int line;
  ExecutionError(int line, const std::string& what);
};

enum class StateFamily { Original, Delayed };

std::string to_string(StateFamily family);

/// An angle as written (`text`) and as evaluated (`value`). Two exprs are
/// equal when they evaluate to the same double.
struct AngleExpr {
  double value = 0.0;
  std::string text;

  friend bool operator==(const AngleExpr& a, const AngleExpr& b) {
    return a.value == b.value;
  }
};

struct Bs1Stmt {
  friend bool operator==(const Bs1Stmt&, const Bs1Stmt&) = default;
};
struct TunerStmt {
  AngleExpr theta;
  friend bool operator==(const TunerStmt&, const TunerStmt&) = default;
};
struct PhaseStmt {
  AngleExpr phi;
  friend bool operator==(const PhaseStmt&, const PhaseStmt&) = default;
};
struct PreselectStmt {
  StateFamily family;
  friend bool operator==(const PreselectStmt&, const PreselectStmt&) = default;
};
struct PostselectStmt {
  StateFamily family;
  friend bool operator==(const PostselectStmt&, const PostselectStmt&) = default;
};
struct MeasureStmt {
  ObservableTag obs;
  Method method;
  std::optional<AngleExpr> g;
  std::optional<long long> shots;
  std::optional<std::uint64_t> seed;
  friend bool operator==(const MeasureStmt&, const MeasureStmt&) = default;
};

using StatementNode =
    std::variant<Bs1Stmt, TunerStmt, PhaseStmt, PreselectStmt, PostselectStmt,
                 MeasureStmt>;

struct Statement {
  int line = 0;  // 1-based source line; ignored by equality
  StatementNode node;

  friend bool operator==(const Statement& a, const Statement& b) {
    return a.node == b.node;
  }
};

struct CircuitProgram {
  std::vector<Statement> statements;

  double theta() const;  // sum of tuner angles (0 when absent)
  double phi() const;    // sum of phase angles
  StateFamily preselect_family() const;
  StateFamily postselect_family() const;

  friend bool operator==(const CircuitProgram&, const CircuitProgram&) = default;
};

/// Parses .mzi source. Throws SyntaxError / UnknownObservable (with line and
/// column in the message) / DuplicatePreselect / DuplicatePostselect /
/// MissingPreselect / MissingPostselect.
CircuitProgram parse(const std::string& source);

/// Canonical text form; parse(pretty_print(p)) == p for every valid program.
std::string pretty_print(const CircuitProgram& program);

/// The shared angle-expression parser (also used for CLI flags). The whole
/// string must be one expression.
double parse_angle(const std::string& text);

/// One result per measure statement, in source order.
struct MeasureResult {
  int line = 0;
  ObservableTag obs = ObservableTag::XL;
  Method method = Method::Analytic;
  Complex value{};
  double std_error = 0.0;
  double prob = 0.0;
  bool diverged = false;
  double g = 0.0;
  long long shots = 0;
  std::uint64_t seed = 0;
};

/// Runs every measure statement against the program's pre/post pair.
/// Vanishing pre/post overlap yields diverged results; other scenario errors
/// are rethrown as ExecutionError with the offending source line.
std::vector<MeasureResult> compile_and_run(const CircuitProgram& program);

std::string measure_result_to_json_string(const MeasureResult& result);
std::string measure_results_csv_header();
std::string measure_result_to_csv(const MeasureResult& result);

}  // namespace mzc
