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

#include "mzcheshire/weak.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

namespace mzc {

namespace {

const Complex kI{0.0, 1.0};

// 2x2 meter rotation exp(-i a Y) = [[cos a, -sin a], [sin a, cos a]].
Operator meter_rotation(double angle, SubsystemLabel meter) {
  Matrix m(2, 2);
  m << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return Operator({meter}, std::move(m));
}

void require_normalized(const StateVector& s, const char* who) {
  if (!s.is_normalized(1e-9))
    throw std::invalid_argument(std::string(who) +
                                ": state is not normalized");
}

void require_weak_coupling(double g) {
  if (!(g > 0.0 && g <= 0.1))
    throw std::invalid_argument("coupling strength g must lie in (0, 0.1]");
}

// 53-bit uniform double in [0,1) straight from the engine; the standard pins
// mt19937_64 output, so seeded runs are byte-identical across platforms
// (std::*_distribution would not be).
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Laplace-smoothed standard error of the mean of n outcomes valued +/-1 of
// which k were +1; strictly positive whenever n > 0.
double binomial_mean_stderr(long long k, long long n) {
  const double p = (static_cast<double>(k) + 1.0) / (static_cast<double>(n) + 2.0);
  return 2.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

struct MeterDistribution {
  double p_success;  // postselection probability
  double p_x_plus;   // P(X=+1) on the conditional meter state
  double p_y_plus;   // P(Y=+1)
};

// Shared core: evolve pre (x) |0>_m, postselect, return the conditional
// meter state and probability. Throws nothing by itself; callers decide how
// to treat tiny probabilities.
std::pair<Vector, double> conditional_meter(const Operator& coupling,
                                            const StateVector& pre,
                                            const StateVector& post) {
  const StateVector meter0 = StateVector::basis({meter_label(0)}, 0);
  const StateVector evolved = apply(coupling, tensor(pre, meter0));

  // Project the system part on `post`, keeping the meter amplitudes.
  auto order = post.labels();
  order.push_back(meter_label(0));
  const StateVector arranged = evolved.reordered(order);
  Vector cond = Vector::Zero(2);
  for (Eigen::Index sys = 0; sys < post.dim(); ++sys)
    for (Eigen::Index m = 0; m < 2; ++m)
      cond(m) += std::conj(post.amplitudes()(sys)) *
                 arranged.amplitudes()(sys * 2 + m);
  const double prob = cond.squaredNorm();
  return {std::move(cond), prob};
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::Analytic:
      return "analytic";
    case Method::MeterExact:
      return "meter";
    case Method::MeterSampled:
      return "sample";
  }
  return "?";
}

CouplingSpec CouplingSpec::canonical(const Operator& observable, double g) {
  if (!observable.is_hermitian())
    throw NonHermitianObservable("CouplingSpec: observable is not Hermitian");
  if (!std::isfinite(g))
    throw std::invalid_argument("CouplingSpec: g must be finite");
  const std::vector<SubsystemLabel> full{path_label(), polarization_label()};
  return CouplingSpec{embed(observable, full), g, g / 4.0,
                      CouplingFlavor::Canonical};
}

CouplingSpec CouplingSpec::paper_cheshire(const Operator& observable, double g) {
  if (!observable.is_hermitian())
    throw NonHermitianObservable("CouplingSpec: observable is not Hermitian");
  if (!std::isfinite(g))
    throw std::invalid_argument("CouplingSpec: g must be finite");
  const std::vector<SubsystemLabel> full{path_label(), polarization_label()};
  return CouplingSpec{embed(observable, full), g, g / 4.0,
                      CouplingFlavor::PaperCheshire};
}

WeakValue weak_value_analytic(const Operator& A, const StateVector& pre,
                              const StateVector& post, double overlap_eps) {
  require_normalized(pre, "weak_value_analytic(pre)");
  require_normalized(post, "weak_value_analytic(post)");
  const Complex denom = inner(post, pre);
  if (std::abs(denom) < overlap_eps)
    throw VanishingOverlap("weak_value_analytic: |<post|pre>| = " +
                           std::to_string(std::abs(denom)) +
                           " below overlap threshold; weak value diverges");
  const Complex numer = inner(post, apply(A, pre));
  return WeakValue{numer / denom, Method::Analytic, pre, post, A};
}

Complex delayed_overlap_denominator(double theta, double phi) {
  return std::cos(theta / 2) + std::sin(theta / 2) * std::exp(kI * phi);
}

Complex closed_form_delayed(ObservableTag tag, double theta, double phi,
                            double overlap_eps) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  const Complex e = std::exp(kI * phi);
  const Complex d = c + s * e;
  if (std::abs(d) < overlap_eps)
    throw VanishingOverlap("closed_form_delayed: overlap denominator vanishes");
  switch (tag) {
    case ObservableTag::XL:
      return s / d;
    case ObservableTag::XR:
      return c * e / d;
    case ObservableTag::ZL:
      return c / d;
    case ObservableTag::ZR:
      return -e * s / d;
    default:
      throw UnknownObservable(
          "closed_form_delayed: closed forms exist for xL, xR, zL, zR only");
  }
}

Operator coupling_unitary(const CouplingSpec& spec) {
  if (!spec.observable.is_hermitian())
    throw NonHermitianObservable("coupling_unitary: observable not Hermitian");
  const SubsystemLabel meter = meter_label(0);
  auto full = spec.observable.labels();
  full.push_back(meter);

  if (spec.flavor == CouplingFlavor::Canonical) {
    // exp(-i g A (x) Y_m) = sum_a P_a (x) exp(-i g a Y_m): each eigenspace of
    // A turns the meter by g*a in the |0>,|1> plane.
    Eigen::SelfAdjointEigenSolver<Matrix> eig(spec.observable.matrix());
    const Eigen::Index dim = spec.observable.dim();
    Matrix total = Matrix::Zero(dim * 2, dim * 2);
    for (Eigen::Index k = 0; k < dim; ++k) {
      const Vector v = eig.eigenvectors().col(k);
      const Operator proj(spec.observable.labels(),
                          Matrix(v * v.adjoint()));
      const Operator rot = meter_rotation(spec.g * eig.eigenvalues()(k), meter);
      total += tensor(proj, rot).matrix();
    }
    return Operator(full, std::move(total));
  }

  // PaperCheshire: recognize which arm observable Pi_arm (x) sigma we were
  // handed, then build the two-branch joint unitary
  //   (I - Pi) (x) sigma (x) I  +  Pi (x) sigma (x) R(theta_g) Z R(theta_g)
  // with R(theta_g) Z R(theta_g) = cos(g) Z + sin(g) X, g = 4 theta_g.
  static const ObservableTag arm_tags[] = {ObservableTag::XL, ObservableTag::XR,
                                           ObservableTag::ZL, ObservableTag::ZR};
  const std::vector<SubsystemLabel> sys{path_label(), polarization_label()};
  for (ObservableTag tag : arm_tags) {
    const Operator candidate = embed(observable(tag), sys);
    if ((candidate.matrix() - spec.observable.matrix()).cwiseAbs().maxCoeff() <
        1e-12) {
      const int arm = (tag == ObservableTag::XL || tag == ObservableTag::ZL) ? 0 : 1;
      const Operator sigma = (tag == ObservableTag::XL || tag == ObservableTag::XR)
                                 ? pauli_x(polarization_label())
                                 : pauli_z(polarization_label());
      const double c2 = std::cos(2 * spec.theta_g), s2 = std::sin(2 * spec.theta_g);
      Matrix refl(2, 2);
      refl << c2, s2, s2, -c2;
      Matrix z(2, 2);
      z << 1, 0, 0, -1;
      const Operator meter_block(std::vector<SubsystemLabel>{meter},
                                 Matrix(refl * z * refl));
      const Operator other = tensor(tensor(projector(path_label(), 1 - arm), sigma),
                                    Operator::identity({meter}));
      const Operator coupled =
          tensor(tensor(projector(path_label(), arm), sigma), meter_block);
      return other + coupled;
    }
  }
  throw UnknownObservable(
      "coupling_unitary: the two-branch flavor is defined for the four arm "
      "observables (xL, xR, zL, zR) only");
}

Postselected postselect(const StateVector& state, const StateVector& target,
                        double overlap_eps) {
  require_normalized(target, "postselect(target)");
  for (const auto& l : target.labels())
    if (std::find(state.labels().begin(), state.labels().end(), l) ==
        state.labels().end())
      throw LabelNotInState("postselect: target subsystem " + to_string(l) +
                            " not in state");
  std::vector<SubsystemLabel> remaining;
  for (const auto& l : state.labels())
    if (std::find(target.labels().begin(), target.labels().end(), l) ==
        target.labels().end())
      remaining.push_back(l);

  auto order = target.labels();
  order.insert(order.end(), remaining.begin(), remaining.end());
  const StateVector arranged = state.reordered(order);
  const Eigen::Index rest_dim = Eigen::Index{1} << remaining.size();

  Vector cond = Vector::Zero(rest_dim);
  for (Eigen::Index t = 0; t < target.dim(); ++t)
    for (Eigen::Index r = 0; r < rest_dim; ++r)
      cond(r) += std::conj(target.amplitudes()(t)) *
                 arranged.amplitudes()(t * rest_dim + r);

  const double prob = cond.squaredNorm();
  if (prob < overlap_eps * overlap_eps)
    throw ZeroProbability(
        "postselect: probability " + std::to_string(prob) +
        " is numerically zero; the conditional state is undefined");
  cond /= std::sqrt(prob);
  return Postselected{StateVector(std::move(remaining), std::move(cond)), prob};
}

WeakValue estimate_weak_value_meter(const Operator& A, const StateVector& pre,
                                    const StateVector& post, double g,
                                    CouplingFlavor flavor) {
  require_weak_coupling(g);
  require_normalized(pre, "estimate_weak_value_meter(pre)");
  require_normalized(post, "estimate_weak_value_meter(post)");
  if (std::abs(inner(post, pre)) < kOverlapEps)
    throw VanishingOverlap("estimate_weak_value_meter: <post|pre> vanishes");

  const CouplingSpec spec = flavor == CouplingFlavor::Canonical
                                ? CouplingSpec::canonical(A, g)
                                : CouplingSpec::paper_cheshire(A, g);
  auto [cond, prob] = conditional_meter(coupling_unitary(spec), pre, post);
  if (prob < kOverlapEps * kOverlapEps)
    throw ZeroProbability("estimate_weak_value_meter: postselection never succeeds");
  cond /= std::sqrt(prob);

  const Complex z = std::conj(cond(0)) * cond(1);
  const double ex = 2 * z.real();  // <X_m>
  const double ey = 2 * z.imag();  // <Y_m>
  return WeakValue{Complex(ex, ey) / (2 * g), Method::MeterExact, pre, post, A, g};
}

WeakValue sample_weak_value(const Operator& A, const StateVector& pre,
                            const StateVector& post, double g, long long shots,
                            std::uint64_t seed) {
  require_weak_coupling(g);
  if (shots < 1) throw std::invalid_argument("sample_weak_value: shots must be >= 1");
  require_normalized(pre, "sample_weak_value(pre)");
  require_normalized(post, "sample_weak_value(post)");

  const CouplingSpec spec = CouplingSpec::canonical(A, g);
  auto [cond, p_success] = conditional_meter(coupling_unitary(spec), pre, post);

  MeterDistribution dist{p_success, 0.5, 0.5};
  if (p_success > 0) {
    const Vector chi = cond / std::sqrt(p_success);
    // |<+x|chi>|^2 and |<+y|chi>|^2 with |+x> = (|0>+|1>)/sqrt2,
    // |+y> = (|0>+i|1>)/sqrt2.
    dist.p_x_plus = 0.5 * std::norm(chi(0) + chi(1));
    dist.p_y_plus = 0.5 * std::norm(chi(0) - kI * chi(1));
  }

  std::mt19937_64 rng(seed);
  long long n_x = 0, n_y = 0, x_plus = 0, y_plus = 0, successes = 0;
  for (long long trial = 0; trial < shots; ++trial) {
    if (uniform01(rng) >= dist.p_success) continue;
    const bool measure_x = (successes % 2 == 0);  // alternate deterministically
    ++successes;
    const double draw = uniform01(rng);
    if (measure_x) {
      ++n_x;
      if (draw < dist.p_x_plus) ++x_plus;
    } else {
      ++n_y;
      if (draw < dist.p_y_plus) ++y_plus;
    }
  }
  if (successes == 0)
    throw NoPostselectedEvents(
        "sample_weak_value: no trial survived postselection");

  // Mean of +/-1 outcomes is 2*fraction(+1) - 1; an unmeasured quadrature
  // (possible only with a single success) contributes 0 with maximal stderr.
  const double mean_x = n_x > 0 ? 2.0 * static_cast<double>(x_plus) / n_x - 1.0 : 0.0;
  const double mean_y = n_y > 0 ? 2.0 * static_cast<double>(y_plus) / n_y - 1.0 : 0.0;
  const double se_x = binomial_mean_stderr(x_plus, std::max(n_x, 1LL));
  const double se_y = binomial_mean_stderr(y_plus, std::max(n_y, 1LL));

  return WeakValue{Complex(mean_x, mean_y) / (2 * g),
                   Method::MeterSampled,
                   pre,
                   post,
                   A,
                   g,
                   shots,
                   std::sqrt(se_x * se_x + se_y * se_y) / (2 * g)};
}

Complex paper_flavor_first_order_shift(ObservableTag tag, const StateVector& pre,
                                       const StateVector& post) {
  if (tag == ObservableTag::PiL || tag == ObservableTag::PiR)
    throw UnknownObservable(
        "paper_flavor_first_order_shift: defined for the arm observables "
        "(xL, xR, zL, zR) only");
  const Operator arm = observable(tag);
  const Operator sigma = (tag == ObservableTag::XL || tag == ObservableTag::XR)
                             ? pauli_x(polarization_label())
                             : pauli_z(polarization_label());
  const Complex numer = inner(post, apply(arm, pre));
  const Complex denom = inner(post, apply(sigma, pre));
  if (std::abs(denom) < kOverlapEps)
    throw VanishingOverlap("paper_flavor_first_order_shift: denominator vanishes");
  return numer / denom;
}

namespace detail {
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

}  // namespace mzc
