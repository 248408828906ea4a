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

// Test-side oracles: brute-force scalar implementations kept deliberately
// independent of the library's Eigen-based code paths, plus deterministic
// random generators for property tests.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using Vec = std::vector<Complex>;
using Mat = std::vector<std::vector<Complex>>;

// Kronecker product of amplitude vectors, scalar by scalar.
inline Vec kron_vec(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

inline Mat kron_mat(const Mat& a, const Mat& b) {
  const size_t ra = a.size(), ca = a[0].size();
  const size_t rb = b.size(), cb = b[0].size();
  Mat out(ra * rb, std::vector<Complex>(ca * cb));
  for (size_t i = 0; i < ra; ++i)
    for (size_t j = 0; j < ca; ++j)
      for (size_t k = 0; k < rb; ++k)
        for (size_t l = 0; l < cb; ++l)
          out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
  return out;
}

inline Mat identity(size_t n) {
  Mat out(n, std::vector<Complex>(n, 0.0));
  for (size_t i = 0; i < n; ++i) out[i][i] = 1.0;
  return out;
}

inline Vec mat_vec(const Mat& m, const Vec& v) {
  Vec out(m.size(), 0.0);
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

inline Mat mat_mat(const Mat& a, const Mat& b) {
  Mat out(a.size(), std::vector<Complex>(b[0].size(), 0.0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k)
      for (size_t j = 0; j < b[0].size(); ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

// <bra|ket> expanded term by term.
inline Complex dot(const Vec& bra, const Vec& ket) {
  Complex out = 0.0;
  for (size_t i = 0; i < bra.size(); ++i) out += std::conj(bra[i]) * ket[i];
  return out;
}

// Deterministic random numbers for property tests (engine output is pinned
// by the standard; no std distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t integer() { return engine_(); }

  // Box-Muller; good enough for generating test states.
  double gauss() {
    const double u = std::max(uniform(), 1e-300);
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
  }

  Complex cgauss() { return Complex(gauss(), gauss()); }

 private:
  std::mt19937_64 engine_;
};

inline Vec random_unit_vec(size_t dim, Rng& rng) {
  Vec v(dim);
  double norm2 = 0.0;
  for (auto& x : v) {
    x = rng.cgauss();
    norm2 += std::norm(x);
  }
  for (auto& x : v) x /= std::sqrt(norm2);
  return v;
}

inline Mat random_hermitian(size_t dim, Rng& rng) {
  Mat m(dim, std::vector<Complex>(dim));
  for (size_t i = 0; i < dim; ++i) {
    m[i][i] = rng.gauss();
    for (size_t j = i + 1; j < dim; ++j) {
      const Complex z = rng.cgauss();
      m[i][j] = z;
      m[j][i] = std::conj(z);
    }
  }
  return m;
}

// Random valid circuit-language source for round-trip testing.
inline std::string random_program_source(Rng& rng) {
  static const char* angles[] = {"pi",   "pi/2", "-pi/2", "3*pi/4", "2pi",
                                 "pi/6", "0.25", "1.5",   "0.857",  "1e-1"};
  static const char* observables[] = {"xL", "xR", "zL", "zR", "piL", "piR"};
  static const char* methods[] = {"analytic", "meter", "sample"};
  const auto pick = [&](auto& list) {
    return list[rng.integer() % (sizeof(list) / sizeof(list[0]))];
  };

  std::string out;
  if (rng.uniform() < 0.5) out += "# generated program\n";
  if (rng.uniform() < 0.5) out += "bs1\n";
  const int tuners = static_cast<int>(rng.integer() % 3);
  for (int i = 0; i < tuners; ++i)
    out += std::string("tuner theta=") + pick(angles) + "\n";
  if (rng.uniform() < 0.7) out += std::string("phase phi=") + pick(angles) + "\n";
  out += rng.uniform() < 0.8 ? "preselect delayed\n" : "preselect original\n";
  out += rng.uniform() < 0.8 ? "postselect delayed\n" : "postselect original\n";
  const int measures = 1 + static_cast<int>(rng.integer() % 4);
  for (int i = 0; i < measures; ++i) {
    out += std::string("measure ") + pick(observables) + " method=" + pick(methods);
    if (rng.uniform() < 0.4) out += std::string(" g=") + pick(angles);
    if (rng.uniform() < 0.4)
      out += " shots=" + std::to_string(1 + rng.integer() % 100000);
    if (rng.uniform() < 0.4) out += " seed=" + std::to_string(rng.integer() % 1000000);
    out += "\n";
  }
  return out;
}

}  // namespace oracle
