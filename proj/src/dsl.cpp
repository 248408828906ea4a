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

#include "mzcheshire/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "json.hpp"

namespace mzc {

namespace {

// Cursor over one source line. Columns are 1-based.
struct Cursor {
  std::string_view text;
  int line;
  size_t pos = 0;

  int column() const { return static_cast<int>(pos) + 1; }
  bool at_end() const { return pos >= text.size() || text[pos] == '#'; }
  char peek() const { return pos < text.size() ? text[pos] : '\0'; }

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(line, column(), expected);
  }

  std::string ident() {
    const size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (pos == start) fail("an identifier");
    return std::string(text.substr(start, pos - start));
  }

  void expect(char c, const std::string& expected) {
    if (peek() != c) fail(expected);
    ++pos;
  }
};

double parse_number(Cursor& c) {
  double out = 0.0;
  const char* begin = c.text.data() + c.pos;
  const char* end = c.text.data() + c.text.size();
  auto [next, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{}) c.fail("a number or 'pi'");
  c.pos += static_cast<size_t>(next - begin);
  return out;
}

bool starts_with_pi(const Cursor& c) {
  return c.pos + 1 < c.text.size() && c.text[c.pos] == 'p' &&
         c.text[c.pos + 1] == 'i' &&
         (c.pos + 2 >= c.text.size() ||
          !std::isalnum(static_cast<unsigned char>(c.text[c.pos + 2])));
}

// factor := 'pi' | number ['pi']     (juxtaposed pi multiplies, e.g. 2pi)
double parse_factor(Cursor& c) {
  if (starts_with_pi(c)) {
    c.pos += 2;
    return M_PI;
  }
  if (!std::isdigit(static_cast<unsigned char>(c.peek())) && c.peek() != '.')
    c.fail("a number or 'pi'");
  double v = parse_number(c);
  if (starts_with_pi(c)) {
    c.pos += 2;
    v *= M_PI;
  }
  return v;
}

// expr := ['-'|'+'] factor ( ('*'|'/') factor )*, evaluated left to right.
double parse_expr(Cursor& c) {
  c.skip_ws();
  double sign = 1.0;
  if (c.peek() == '-') {
    sign = -1.0;
    ++c.pos;
  } else if (c.peek() == '+') {
    ++c.pos;
  }
  c.skip_ws();
  double value = parse_factor(c);
  for (;;) {
    const size_t mark = c.pos;
    c.skip_ws();
    const char op = c.peek();
    if (op != '*' && op != '/') {
      c.pos = mark;  // expression ends; leave trailing whitespace alone
      break;
    }
    ++c.pos;
    c.skip_ws();
    const double rhs = parse_factor(c);
    value = op == '*' ? value * rhs : value / rhs;
  }
  return sign * value;
}

AngleExpr parse_angle_expr(Cursor& c) {
  c.skip_ws();
  const size_t start = c.pos;
  const int start_col = c.column();
  const double value = parse_expr(c);
  if (!std::isfinite(value))
    throw SyntaxError(c.line, start_col, "a finite value");
  return AngleExpr{value, std::string(c.text.substr(start, c.pos - start))};
}

long long parse_integer(Cursor& c) {
  c.skip_ws();
  long long out = 0;
  const char* begin = c.text.data() + c.pos;
  const char* end = c.text.data() + c.text.size();
  auto [next, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{}) c.fail("an integer");
  c.pos += static_cast<size_t>(next - begin);
  return out;
}

StateFamily parse_family(Cursor& c) {
  c.skip_ws();
  const int col = c.column();
  const std::string word = c.ident();
  if (word == "delayed") return StateFamily::Delayed;
  if (word == "original") return StateFamily::Original;
  throw SyntaxError(c.line, col, "'delayed' or 'original'");
}

Method parse_method_name(Cursor& c) {
  const int col = c.column();
  const std::string word = c.ident();
  if (word == "analytic") return Method::Analytic;
  if (word == "meter") return Method::MeterExact;
  if (word == "sample") return Method::MeterSampled;
  throw SyntaxError(c.line, col, "'analytic', 'meter' or 'sample'");
}

MeasureStmt parse_measure(Cursor& c) {
  c.skip_ws();
  const int obs_col = c.column();
  const std::string obs_word = c.ident();
  MeasureStmt m{};
  try {
    m.obs = observable_from_string(obs_word);
  } catch (const UnknownObservable&) {
    throw UnknownObservable("line " + std::to_string(c.line) + ", column " +
                            std::to_string(obs_col) + ": unknown observable '" +
                            obs_word + "' (expected xL, xR, zL, zR, piL or piR)");
  }

  std::optional<Method> method;
  for (;;) {
    c.skip_ws();
    if (c.at_end()) break;
    const int key_col = c.column();
    const std::string key = c.ident();
    c.skip_ws();
    c.expect('=', "'=' after parameter name");
    c.skip_ws();
    if (key == "method") {
      if (method) throw SyntaxError(c.line, key_col, "at most one method=");
      method = parse_method_name(c);
    } else if (key == "g") {
      if (m.g) throw SyntaxError(c.line, key_col, "at most one g=");
      m.g = parse_angle_expr(c);
    } else if (key == "shots") {
      if (m.shots) throw SyntaxError(c.line, key_col, "at most one shots=");
      m.shots = parse_integer(c);
    } else if (key == "seed") {
      if (m.seed) throw SyntaxError(c.line, key_col, "at most one seed=");
      m.seed = static_cast<std::uint64_t>(parse_integer(c));
    } else {
      throw SyntaxError(c.line, key_col, "'method', 'g', 'shots' or 'seed'");
    }
  }
  if (!method)
    throw SyntaxError(c.line, c.column(), "method=<analytic|meter|sample>");
  m.method = *method;
  return m;
}

}  // namespace

SyntaxError::SyntaxError(int line, int column, const std::string& expected_desc)
    : Error("line " + std::to_string(line) + ", column " +
            std::to_string(column) + ": expected " + expected_desc),
      line(line),
      column(column),
      expected(expected_desc) {}

ExecutionError::ExecutionError(int line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line(line) {}

std::string to_string(StateFamily family) {
  return family == StateFamily::Delayed ? "delayed" : "original";
}

double CircuitProgram::theta() const {
  double sum = 0.0;
  for (const auto& s : statements)
    if (const auto* t = std::get_if<TunerStmt>(&s.node)) sum += t->theta.value;
  return sum;
}

double CircuitProgram::phi() const {
  double sum = 0.0;
  for (const auto& s : statements)
    if (const auto* p = std::get_if<PhaseStmt>(&s.node)) sum += p->phi.value;
  return sum;
}

StateFamily CircuitProgram::preselect_family() const {
  for (const auto& s : statements)
    if (const auto* p = std::get_if<PreselectStmt>(&s.node)) return p->family;
  throw MissingPreselect("program has no preselect statement");
}

StateFamily CircuitProgram::postselect_family() const {
  for (const auto& s : statements)
    if (const auto* p = std::get_if<PostselectStmt>(&s.node)) return p->family;
  throw MissingPostselect("program has no postselect statement");
}

CircuitProgram parse(const std::string& source) {
  CircuitProgram program;
  bool seen_pre = false, seen_post = false;

  int line_no = 0;
  size_t start = 0;
  while (start <= source.size()) {
    size_t eol = source.find('\n', start);
    const size_t next = eol == std::string::npos ? source.size() + 1 : eol + 1;
    if (eol == std::string::npos) eol = source.size();
    std::string_view text(source.data() + start, eol - start);
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    ++line_no;
    start = next;
    if (line_no > 100000) throw Error("parse: source too large");

    Cursor c{text, line_no};
    c.skip_ws();
    if (c.at_end()) continue;

    const int kw_col = c.column();
    const std::string keyword = c.ident();
    Statement stmt;
    stmt.line = line_no;

    if (keyword == "bs1") {
      stmt.node = Bs1Stmt{};
    } else if (keyword == "tuner") {
      c.skip_ws();
      const int col = c.column();
      if (c.ident() != "theta") throw SyntaxError(line_no, col, "'theta='");
      c.skip_ws();
      c.expect('=', "'=' after theta");
      stmt.node = TunerStmt{parse_angle_expr(c)};
    } else if (keyword == "phase") {
      c.skip_ws();
      const int col = c.column();
      if (c.ident() != "phi") throw SyntaxError(line_no, col, "'phi='");
      c.skip_ws();
      c.expect('=', "'=' after phi");
      stmt.node = PhaseStmt{parse_angle_expr(c)};
    } else if (keyword == "preselect") {
      if (seen_pre)
        throw DuplicatePreselect("line " + std::to_string(line_no) +
                                 ": second preselect statement");
      seen_pre = true;
      stmt.node = PreselectStmt{parse_family(c)};
    } else if (keyword == "postselect") {
      if (seen_post)
        throw DuplicatePostselect("line " + std::to_string(line_no) +
                                  ": second postselect statement");
      seen_post = true;
      stmt.node = PostselectStmt{parse_family(c)};
    } else if (keyword == "measure") {
      stmt.node = parse_measure(c);
    } else {
      throw SyntaxError(line_no, kw_col,
                        "a statement (bs1, tuner, phase, preselect, "
                        "postselect or measure), got '" +
                            keyword + "'");
    }

    c.skip_ws();
    if (!c.at_end()) c.fail("end of line");
    program.statements.push_back(std::move(stmt));
  }

  if (!seen_pre) throw MissingPreselect("program has no preselect statement");
  if (!seen_post) throw MissingPostselect("program has no postselect statement");
  return program;
}

double parse_angle(const std::string& text) {
  Cursor c{text, 1};
  const double value = parse_expr(c);
  c.skip_ws();
  if (c.pos != text.size())
    throw SyntaxError(1, c.column(), "end of expression");
  if (!std::isfinite(value)) throw SyntaxError(1, 1, "a finite value");
  return value;
}

namespace {

std::string angle_text(const AngleExpr& e) {
  return e.text.empty() ? format_double(e.value) : e.text;
}

}  // namespace

std::string pretty_print(const CircuitProgram& program) {
  std::string out;
  for (const auto& s : program.statements) {
    if (std::holds_alternative<Bs1Stmt>(s.node)) {
      out += "bs1";
    } else if (const auto* t = std::get_if<TunerStmt>(&s.node)) {
      out += "tuner theta=" + angle_text(t->theta);
    } else if (const auto* p = std::get_if<PhaseStmt>(&s.node)) {
      out += "phase phi=" + angle_text(p->phi);
    } else if (const auto* pre = std::get_if<PreselectStmt>(&s.node)) {
      out += "preselect " + to_string(pre->family);
    } else if (const auto* post = std::get_if<PostselectStmt>(&s.node)) {
      out += "postselect " + to_string(post->family);
    } else if (const auto* m = std::get_if<MeasureStmt>(&s.node)) {
      out += "measure " + to_string(m->obs) + " method=" + to_string(m->method);
      if (m->g) out += " g=" + angle_text(*m->g);
      if (m->shots) out += " shots=" + std::to_string(*m->shots);
      if (m->seed) out += " seed=" + std::to_string(*m->seed);
    }
    out += "\n";
  }
  return out;
}

std::vector<MeasureResult> compile_and_run(const CircuitProgram& program) {
  const StateFamily pre_family = program.preselect_family();
  const StateFamily post_family = program.postselect_family();
  const StateVector pre = pre_family == StateFamily::Delayed
                              ? preselection_delayed(program.theta(), program.phi())
                              : preselection_original();
  const StateVector post = post_family == StateFamily::Delayed
                               ? postselection_delayed()
                               : postselection_original();
  const Complex overlap = inner(post, pre);
  const bool diverged = 2 * std::abs(overlap) < 10 * kOverlapEps;

  std::vector<MeasureResult> results;
  for (const auto& s : program.statements) {
    const auto* m = std::get_if<MeasureStmt>(&s.node);
    if (!m) continue;
    MeasureResult r;
    r.line = s.line;
    r.obs = m->obs;
    r.method = m->method;
    r.g = m->g ? m->g->value : kDefaultCoupling;
    r.shots = m->shots ? *m->shots : 100000;
    r.seed = m->seed ? *m->seed : 0;
    r.prob = std::norm(overlap);
    r.diverged = diverged;
    if (diverged) {
      r.value = Complex(std::nan(""), std::nan(""));
      results.push_back(r);
      continue;
    }
    try {
      switch (m->method) {
        case Method::Analytic:
          r.value = weak_value_analytic(observable(m->obs), pre, post).value;
          break;
        case Method::MeterExact:
          r.value =
              estimate_weak_value_meter(observable(m->obs), pre, post, r.g).value;
          break;
        case Method::MeterSampled: {
          const WeakValue wv = sample_weak_value(observable(m->obs), pre, post,
                                                 r.g, r.shots, r.seed);
          r.value = wv.value;
          r.std_error = wv.std_error;
          break;
        }
      }
    } catch (const std::exception& e) {
      throw ExecutionError(s.line, e.what());
    }
    results.push_back(r);
  }
  return results;
}

std::string measure_result_to_json_string(const MeasureResult& r) {
  nlohmann::ordered_json j;
  j["line"] = r.line;
  j["observable"] = to_string(r.obs);
  j["method"] = to_string(r.method);
  if (r.diverged) {
    j["value_re"] = nullptr;
    j["value_im"] = nullptr;
  } else {
    j["value_re"] = r.value.real();
    j["value_im"] = r.value.imag();
  }
  if (r.method == Method::MeterSampled && !r.diverged)
    j["stderr"] = r.std_error;
  j["prob"] = r.prob;
  j["flag"] = r.diverged ? "diverged" : "ok";
  return j.dump();
}

std::string measure_results_csv_header() {
  return "line,observable,method,value_re,value_im,stderr,prob,flag";
}

std::string measure_result_to_csv(const MeasureResult& r) {
  std::string out = std::to_string(r.line) + "," + to_string(r.obs) + "," +
                    to_string(r.method);
  if (r.diverged) {
    out += ",,";
  } else {
    out += "," + format_double(r.value.real()) + "," +
           format_double(r.value.imag());
  }
  out += r.method == Method::MeterSampled && !r.diverged
             ? "," + format_double(r.std_error)
             : ",";
  out += "," + format_double(r.prob);
  out += r.diverged ? ",diverged" : ",ok";
  return out;
}

}  // namespace mzc
