// Copyright 2026 The ciss-frg Authors
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

#include "ciss/bubbles.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ciss/error.hpp"

namespace ciss {

namespace {

constexpr double kOverflowArg = 300.0;

double sinhc(double x) { return std::abs(x) < 1e-8 ? 1.0 : std::sinh(x) / x; }

void check_lambda(double lambda) {
  if (!(lambda > 0.0)) throw DomainError("cutoff lambda must be positive");
}

double kernel(BubbleKind kind, double a, double b, double t) {
  return kind == BubbleKind::ph ? ph_kernel(a, b, t) : pp_kernel(a, b, t);
}

}  // namespace

double cutoff_function(double energy, double lambda) {
  check_lambda(lambda);
  if (std::isinf(lambda)) return 1.0;
  const double x = std::abs(energy) / lambda;
  if (x < 1e-8) return 1.0 - 0.5 * x;
  if (x > 700.0) return x * std::exp(-x);
  return x / std::expm1(x);
}

double cutoff_scale_derivative(double energy, double lambda) {
  check_lambda(lambda);
  if (std::isinf(lambda)) return 0.0;
  const double x = std::abs(energy) / lambda;
  // -x Theta'(x)
  if (x < 1e-4) return x / 2.0 - x * x / 6.0 + x * x * x * x / 180.0;
  if (x < 1.0) {
    const double em = std::expm1(x);
    return x * (x * std::exp(x) - em) / (em * em);
  }
  const double e = std::exp(-x);
  const double d = 1.0 - e;
  return x * (x - 1.0 + e) * e / (d * d);
}

double ph_kernel(double a, double b, double t) {
  if (t < 0.0) throw DomainError("temperature must be non-negative");
  if (t == 0.0) {
    if (a == b) return 0.0;
    return (fermi_occupation(a, 0.0) - fermi_occupation(b, 0.0)) / (a - b);
  }
  const double x = a / (2.0 * t);
  const double y = b / (2.0 * t);
  if (std::abs(x) < kOverflowArg && std::abs(y) < kOverflowArg)
    return -sinhc(y - x) / (4.0 * t * std::cosh(x) * std::cosh(y));
  const double na = fermi_occupation(a, t);
  const double nb = fermi_occupation(b, t);
  if (a == b) return -na * (1.0 - na) / t;
  return (na - nb) / (a - b);
}

double pp_kernel(double a, double b, double t) {
  if (t < 0.0) throw DomainError("temperature must be non-negative");
  if (t == 0.0) {
    const double s = (a > 0) - (a < 0) + (b > 0) - (b < 0);
    if (a + b == 0.0) return 0.0;
    return s / (2.0 * (a + b));
  }
  const double x = a / (2.0 * t);
  const double y = b / (2.0 * t);
  if (std::abs(x) < kOverflowArg && std::abs(y) < kOverflowArg)
    return sinhc(x + y) / (4.0 * t * std::cosh(x) * std::cosh(y));
  const double na = fermi_occupation(a, t);
  const double nb = fermi_occupation(b, t);
  if (a + b == 0.0) return na * (1.0 - na) / t;
  return (1.0 - na - nb) / (a + b);
}

namespace {

QuadratureResult integrate(BubbleKind kind, Band nu, Band nup, double lambda, const ModelParams& p,
                           const QuadratureOptions& opt, bool derivative) {
  p.validate();
  check_lambda(lambda);
  const double t = p.temperature;
  auto f = [&](double k) {
    const double a = dispersion(p, nu, k);
    const double b = dispersion(p, nup, k);
    double w;
    if (derivative)
      w = cutoff_scale_derivative(a, lambda) * cutoff_function(b, lambda) +
          cutoff_function(a, lambda) * cutoff_scale_derivative(b, lambda);
    else
      w = cutoff_function(a, lambda) * cutoff_function(b, lambda);
    if (w == 0.0) return 0.0;
    return kernel(kind, a, b, t) * w;
  };
  QuadratureResult r = periodic_mean(f, opt);
  if (!r.converged) {
    std::ostringstream msg;
    msg << "bubble quadrature did not converge: points=" << r.points << " value=" << r.value
        << " error=" << r.error << " rel_tol=" << opt.rel_tol;
    throw NumericalError(msg.str());
  }
  return r;
}

}  // namespace

QuadratureResult bubble(BubbleKind kind, Band nu, Band nup, double lambda, const ModelParams& p,
                        const QuadratureOptions& opt) {
  return integrate(kind, nu, nup, lambda, p, opt, false);
}

QuadratureResult bubble_scale_derivative(BubbleKind kind, Band nu, Band nup, double lambda,
                                         const ModelParams& p, const QuadratureOptions& opt) {
  return integrate(kind, nu, nup, lambda, p, opt, true);
}

BubbleTable::BubbleTable(const ModelParams& p, int k_points) : params_(p) {
  p.validate();
  if (k_points < 64 || k_points % 2 != 0) throw DomainError("k_points must be even and >= 64");
  const double pi = std::numbers::pi;
  k_.resize(k_points);
  es_.resize(k_points);
  ep_.resize(k_points);
  for (auto& v : kph_) v.resize(k_points);
  for (auto& v : kpp_) v.resize(k_points);
  const double t = p.temperature;
  for (int i = 0; i < k_points; ++i) {
    const double k = -pi + 2.0 * pi * i / k_points;
    k_[i] = k;
    es_[i] = dispersion(p, Band::s, k);
    ep_[i] = dispersion(p, Band::px, k);
    kph_[ss][i] = ph_kernel(es_[i], es_[i], t);
    kph_[sp][i] = ph_kernel(es_[i], ep_[i], t);
    kph_[pp_][i] = ph_kernel(ep_[i], ep_[i], t);
    kpp_[ss][i] = pp_kernel(es_[i], es_[i], t);
    kpp_[sp][i] = pp_kernel(es_[i], ep_[i], t);
    kpp_[pp_][i] = pp_kernel(ep_[i], ep_[i], t);
  }
}

BubbleMatrices BubbleTable::assemble(double lambda, bool derivative, int stride) const {
  check_lambda(lambda);
  double ph[3] = {0, 0, 0};
  double pp[3] = {0, 0, 0};
  const int n = k_points();
  int count = 0;
  for (int i = 0; i < n; i += stride) {
    const double ts = cutoff_function(es_[i], lambda);
    const double tp = cutoff_function(ep_[i], lambda);
    double w[3];
    if (derivative) {
      const double ds = cutoff_scale_derivative(es_[i], lambda);
      const double dp = cutoff_scale_derivative(ep_[i], lambda);
      w[ss] = 2.0 * ds * ts;
      w[sp] = ds * tp + ts * dp;
      w[pp_] = 2.0 * dp * tp;
    } else {
      w[ss] = ts * ts;
      w[sp] = ts * tp;
      w[pp_] = tp * tp;
    }
    for (int c = 0; c < 3; ++c) {
      ph[c] += kph_[c][i] * w[c];
      pp[c] += kpp_[c][i] * w[c];
    }
    ++count;
  }
  BubbleMatrices m;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const int c = (a == 0 && b == 0) ? ss : ((a == 0) != (b == 0) ? sp : pp_);
      m.ph(a, b) = ph[c] / count;
      m.pp(a, b) = pp[c] / count;
    }
  return m;
}

BubbleMatrices BubbleTable::values(double lambda) const { return assemble(lambda, false, 1); }

BubbleMatrices BubbleTable::scale_derivatives(double lambda) const {
  return assemble(lambda, true, 1);
}

double BubbleTable::grid_error() const {
  const double inf = INFINITY;
  const BubbleMatrices full = assemble(inf, false, 1);
  const BubbleMatrices half = assemble(inf, false, 2);
  return std::max((full.ph - half.ph).cwiseAbs().maxCoeff(),
                  (full.pp - half.pp).cwiseAbs().maxCoeff());
}

}  // namespace ciss
